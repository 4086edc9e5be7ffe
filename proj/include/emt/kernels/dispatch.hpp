#pragma once

#include <vector>

#include "emt/error.hpp"
#include "emt/focal_structure.hpp"
#include "emt/kernels/consonant.hpp"
#include "emt/kernels/fmt.hpp"
#include "emt/kernels/lattice.hpp"
#include "emt/kernels/order_agnostic.hpp"
#include "emt/kernels/semilattice.hpp"
#include "emt/transform.hpp"

namespace emt {

/// Runs the kernel selected by `fs.chosen` in place. values[k] belongs to
/// fs.closure[k]; everything outside the closure holds the neutral value.
template <class Set, class V>
void run_transform(const focal_structure<Set>& fs, std::vector<V>& values, const transform_spec& spec,
                   op_counts* counts = nullptr) {
  if (spec.order != fs.order)
    throw error(error_code::width_mismatch, "transform order differs from the structure's order");
  if (values.size() != fs.closure.size())
    throw error(error_code::width_mismatch, "values do not match the structure's node family");
  switch (fs.chosen) {
    case scheme::consonant:
      consonant_transform(fs.closure, values, spec, counts);
      break;
    case scheme::order_agnostic:
      order_agnostic_transform(fs.closure, values, spec, counts);
      break;
    case scheme::semilattice:
      semilattice_transform(fs.closure, values, fs.iotas, fs.width, spec, counts);
      break;
    case scheme::lattice_support:
      lattice_transform(fs.closure, values, fs.iotas, spec, counts);
      break;
    case scheme::fmt:
      fmt_transform(values, fs.width, spec, counts);
      break;
  }
}

}  // namespace emt
