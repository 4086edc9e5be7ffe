// Command-line front end: transform, fuse, verify and bench.
//
// Exit codes: 0 success, 1 a check failed (verify/bench), 2 invalid input or
// a library error. Documents and reports are JSON on stdout unless --report
// names a file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "emt/emt.hpp"

namespace {

using emt::error;
using emt::error_code;

struct common_options {
  std::string scheme = "auto";
  std::string report;
  double c = 10.0;
  bool pretty = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(error_code::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const nlohmann::json& j, const common_options& o) {
  const std::string text = o.pretty ? j.dump(2) : j.dump();
  if (o.report.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(o.report);
  if (!out) throw error(error_code::parse_error, "cannot write '" + o.report + "'");
  out << text << "\n";
}

emt::derive_options derive_opts(const common_options& o) {
  emt::derive_options opt;
  if (o.scheme != "auto") opt.forced = emt::parse_scheme(o.scheme);
  opt.thresholds.c = o.c;
  return opt;
}

// Calls f with a null pointer of the narrowest set type that holds n states.
template <class F>
decltype(auto) with_width(std::size_t n, F&& f) {
  if (n <= 64) return f(static_cast<emt::basic_subset<1>*>(nullptr));
  if (n <= 128) return f(static_cast<emt::basic_subset<2>*>(nullptr));
  if (n <= 256) return f(static_cast<emt::basic_subset<4>*>(nullptr));
  throw error(error_code::too_many_labels, std::to_string(n) + " states exceed the 256-state limit");
}

// Follows the conversion line one step at a time.
template <class Set>
emt::representation<Set> convert(emt::representation<Set> rep, emt::function_kind target,
                                 const emt::derive_options& opt) {
  for (auto step : emt::conversion_path(emt::kind_of(rep), target)) rep = emt::derive(rep, step, opt);
  return rep;
}

template <class Set>
emt::mass_function<Set> as_mass(const emt::evidence_document& doc, const emt::derive_options& opt) {
  return std::get<emt::mass_function<Set>>(convert(emt::to_representation<Set>(doc, opt), emt::function_kind::mass, opt));
}

int cmd_transform(const std::string& input, const std::string& target, const common_options& o) {
  const auto doc = emt::parse_document(read_file(input));
  const auto opt = derive_opts(o);
  const auto kind = emt::parse_function_kind(target);
  auto out = with_width(doc.fod.size(), [&]<class Set>(Set*) {
    return emt::to_document<Set>(convert(emt::to_representation<Set>(doc, opt), kind, opt));
  });
  if (kind == emt::function_kind::mass) out.normalized = doc.normalized || out.normalized;
  emit(emt::to_json(out), o);
  return 0;
}

int cmd_fuse(const std::string& first, const std::string& second, bool normalize, const common_options& o) {
  const auto d1 = emt::parse_document(read_file(first));
  const auto d2 = emt::parse_document(read_file(second));
  if (d1.fod != d2.fod) throw error(error_code::frame_mismatch, "the two documents use different frames");
  const auto opt = derive_opts(o);
  auto out = with_width(d1.fod.size(), [&]<class Set>(Set*) {
    emt::op_counts counts;
    auto fused = emt::fuse_conjunctive(as_mass<Set>(d1, opt), as_mass<Set>(d2, opt), normalize, opt, &counts);
    auto doc = emt::to_document<Set>(emt::representation<Set>(std::move(fused)));
    doc.counts = counts;
    return doc;
  });
  emit(emt::to_json(out), o);
  return 0;
}

int cmd_verify(const std::string& input, std::size_t max_omega, bool inject_fault, const common_options& o) {
  const auto doc = emt::parse_document(read_file(input));
  const std::size_t limit = std::min(max_omega, emt::dense_width_limit);
  if (doc.fod.size() > limit)
    throw error(error_code::frame_too_large,
                std::to_string(doc.fod.size()) + " states exceed the oracle limit of " + std::to_string(limit));
  const auto m = as_mass<emt::subset>(doc, derive_opts(o));
  const auto report = emt::verify_mass(m, {max_omega, inject_fault});

  nlohmann::json j{{"pass", report.pass()}, {"entries", nlohmann::json::array()}};
  for (const auto& e : report.entries) {
    std::cerr << (e.pass ? "[PASS] " : "[FAIL] ") << emt::to_string(e.kind) << " via " << emt::to_string(e.used)
              << ": max deviation " << e.max_deviation << (e.worst_set.empty() ? "" : " at " + e.worst_set) << "\n";
    j["entries"].push_back({{"kind", std::string(emt::to_string(e.kind))},
                            {"scheme", std::string(emt::to_string(e.used))},
                            {"max_deviation", e.max_deviation},
                            {"worst_set", e.worst_set},
                            {"pass", e.pass}});
  }
  emit(j, o);
  return report.pass() ? 0 : 1;
}

int cmd_bench(const emt::generator_spec& spec, const common_options& o) {
  const auto report = emt::run_bench(spec, {o.c});
  for (const auto& v : report.violations) std::cerr << "violation: " << v << "\n";
  emit(emt::to_json(report), o);
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Efficient zeta and Moebius transforms for Dempster-Shafer evidence"};
  app.require_subcommand(1);
  common_options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--report", o.report, "Write the JSON output to this file instead of stdout");
    sub->add_flag("--pretty", o.pretty, "Indent the JSON output");
  };
  auto add_scheme = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "auto, consonant, agnostic, semilattice, lattice or fmt")
        ->check(CLI::IsMember({"auto", "consonant", "agnostic", "semilattice", "lattice", "fmt"}));
    sub->add_option("--c", o.c, "Support-size threshold factor: semilattice while |S| <= c*|Omega|")
        ->check(CLI::PositiveNumber);
  };

  std::string input, second, target = "commonality";
  bool normalize = false, inject_fault = false;
  std::size_t max_omega = 12;
  emt::generator_spec spec;
  std::string generator = "random";

  auto* transform = app.add_subcommand("transform", "Convert an evidence document to another representation");
  transform->add_option("input", input, "Evidence document (JSON)")->required()->check(CLI::ExistingFile);
  transform->add_option("--target", target, "mass, commonality, implicability, conj_weight or disj_weight")
      ->check(CLI::IsMember({"mass", "commonality", "implicability", "conj_weight", "disj_weight"}));
  add_scheme(transform);
  add_common(transform);

  auto* fuse = app.add_subcommand("fuse", "Conjunctive combination of two evidence documents");
  fuse->add_option("first", input, "First document")->required()->check(CLI::ExistingFile);
  fuse->add_option("second", second, "Second document")->required()->check(CLI::ExistingFile);
  fuse->add_flag("--normalize", normalize, "Apply Dempster normalization (drop conflict, rescale)");
  add_scheme(fuse);
  add_common(fuse);

  auto* verify = app.add_subcommand("verify", "Check every applicable scheme against the direct definition");
  verify->add_option("input", input, "Evidence document")->required()->check(CLI::ExistingFile);
  verify->add_option("--max-omega", max_omega, "Largest frame the oracle accepts");
  verify->add_flag("--inject-fault", inject_fault, "Corrupt one computed value (negative control)");
  add_common(verify);

  auto* bench = app.add_subcommand("bench", "Operation counts of the transforms against the dense baseline");
  bench->add_option("--generator", generator, "random, consonant or quasi_bayesian")
      ->check(CLI::IsMember({"random", "consonant", "quasi_bayesian"}));
  bench->add_option("--omega", spec.width, "Number of states")->check(CLI::Range(1, 64));
  bench->add_option("--support", spec.support, "Number of focal sets")->check(CLI::PositiveNumber);
  bench->add_option("--seed", spec.seed, "Generator seed");
  bench->add_option("--trials", spec.trials, "Instances to generate")->check(CLI::PositiveNumber);
  bench->add_option("--c", o.c, "Support-size threshold factor")->check(CLI::PositiveNumber);
  add_common(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*transform) return cmd_transform(input, target, o);
    if (*fuse) return cmd_fuse(input, second, normalize, o);
    if (*verify) return cmd_verify(input, max_omega, inject_fault, o);
    spec.kind = emt::parse_generator(generator);
    return cmd_bench(spec, o);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";  // what() leads with the error code name
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
