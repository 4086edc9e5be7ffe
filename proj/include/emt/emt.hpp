#pragma once

#include "emt/bench.hpp"
#include "emt/dst/fusion.hpp"
#include "emt/dst/mass_function.hpp"
#include "emt/dst/views.hpp"
#include "emt/error.hpp"
#include "emt/focal_structure.hpp"
#include "emt/frame.hpp"
#include "emt/io/evidence_document.hpp"
#include "emt/kernels/dispatch.hpp"
#include "emt/kernels/naive.hpp"
#include "emt/powerset_tree.hpp"
#include "emt/subset.hpp"
#include "emt/transform.hpp"
#include "emt/verify.hpp"
