// pgroup: build, inspect and verify finite p-groups given by
// power-commutator presentations, decide capability of 2-generated
// class-2 groups, and search for central-extension witnesses.
//
// Exit codes: 0 pass/success, 1 negative verdict or failed check,
// 2 usage or input error, 3 resource limit.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pcg/capability.hpp"
#include "pcg/families.hpp"
#include "pcg/format.hpp"
#include "pcg/kernels.hpp"
#include "pcg/structure.hpp"

using namespace pcg;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Options {
  bool machine = false;
  bool deterministic = true;
};

PcPresentation load_checked(const std::string& path) {
  PcPresentation g = read_presentation_file(path);
  auto rep = g.check_consistency();
  if (!rep.pass)
    throw InputError(path + ": presentation is inconsistent [" + rep.failing_word + "]");
  return g;
}

std::string conflict_name(ConflictFlag c) {
  switch (c) {
    case ConflictFlag::None: return "OK";
    case ConflictFlag::Soft: return "CONFLICT";
    case ConflictFlag::Hard: return "HARD-CONFLICT";
  }
  return "?";
}

void print_verdict(const Options& opt, const std::string& command, const CapabilityVerdict& v) {
  if (opt.machine) {
    std::cout << command << "\t" << status_name(v.status) << "\t" << reason_name(v.reason) << "\t"
              << (v.matched ? params_to_string(*v.matched) : "-") << "\t"
              << (v.witness ? std::to_string(v.witness->h.order()) : "-") << "\n"
              << std::flush;
    return;
  }
  std::cout << "verdict: " << status_name(v.status) << "\n";
  std::cout << "reason:  " << reason_name(v.reason) << "\n";
  if (v.matched) {
    std::cout << "family:  " << params_to_string(*v.matched) << "\n";
    std::cout << "clause:  " << capability_clause(v.matched->variant) << " ("
              << (capability_condition(*v.matched) ? "satisfied" : "violated") << ")\n";
  }
  if (v.witness)
    std::cout << "witness: order " << v.witness->h.order() << ", " << v.witness->new_gens
              << " new central generator(s), candidate #" << v.witness->candidate_index << "\n";
  if (!v.detail.empty()) std::cout << "detail:  " << v.detail << "\n";
}

int verdict_exit(const CapabilityVerdict& v) {
  return v.status == CapStatus::Capable ? kExitPass : kExitFail;
}

int run_family_build(const Options& opt, const std::string& variant, std::uint32_t p,
                     std::uint32_t alpha, std::uint32_t beta, std::uint32_t gamma,
                     std::uint32_t sigma, const std::string& out_path) {
  auto var = variant_from_name(variant);
  if (!var) throw InputError("unknown family variant: " + variant);
  FamilyParams params{*var, p, alpha, beta, gamma, sigma};
  PcPresentation g = build_family(params);
  write_presentation_file(out_path, g);
  if (opt.machine)
    std::cout << "family\t" << params_to_string(params) << "\t" << g.order() << "\t" << out_path
              << "\n";
  else
    std::cout << "built " << params_to_string(params) << ", order " << g.order() << " -> "
              << out_path << "\n";
  return kExitPass;
}

int run_invariants(const Options& opt, const std::string& path) {
  PcPresentation g = load_checked(path);
  Subgroup z = center(g);
  Subgroup der = derived_subgroup(g);
  Subgroup phi = frattini(g);
  std::uint32_t cls = nilpotency_class(g);
  std::uint32_t d = minimal_generators(g);
  std::uint64_t expn = exponent(g);
  bool der_cyc = is_cyclic(der);
  bool z_le_phi = phi.contains_subgroup(z);
  if (opt.machine) {
    std::cout << "invariants\t" << g.order() << "\t" << cls << "\t" << z.size() << "\t"
              << der.size() << "\t" << phi.size() << "\t" << d << "\t" << expn << "\t"
              << (der_cyc ? 1 : 0) << "\t" << (z_le_phi ? 1 : 0) << "\n";
  } else {
    std::cout << "order:            " << g.order() << "\n"
              << "class:            " << cls << "\n"
              << "|Z(G)|:           " << z.size() << "\n"
              << "|gamma2(G)|:      " << der.size() << "\n"
              << "|Phi(G)|:         " << phi.size() << "\n"
              << "d(G):             " << d << "\n"
              << "exponent:         " << expn << "\n"
              << "gamma2 cyclic:    " << (der_cyc ? "yes" : "no") << "\n"
              << "Z(G) <= Phi(G):   " << (z_le_phi ? "yes" : "no") << "\n";
  }
  return kExitPass;
}

int run_capable_decide(const Options& opt, const std::string& path) {
  PcPresentation g = load_checked(path);
  CapabilityVerdict v = theorem_b_decide(g);
  if (v.status == CapStatus::Unknown && v.reason == CapReason::HypothesisViolation) {
    std::string note = v.detail;
    CapabilityVerdict fallback = classify_capable(g);
    if (!opt.machine)
      std::cout << "note: " << note << "; falling back to the bare classification\n";
    fallback.detail = note + "; " + fallback.detail;
    print_verdict(opt, "decide", fallback);
    return verdict_exit(fallback);
  }
  print_verdict(opt, "decide", v);
  return verdict_exit(v);
}

int run_capable_search(const Options& opt, const std::string& path, std::uint32_t budget,
                       const std::string& out_path) {
  PcPresentation g = load_checked(path);
  CapabilityVerdict v = witness_search(g, budget, opt.deterministic);
  if (v.witness && !out_path.empty()) {
    write_presentation_file(out_path, v.witness->h);
    if (!opt.machine) std::cout << "witness written to " << out_path << "\n";
  }
  print_verdict(opt, "search", v);
  return verdict_exit(v);
}

int run_verify_theorem_a(const Options& opt, const std::string& path) {
  PcPresentation g = load_checked(path);
  CapabilityVerdict v = theorem_b_decide(g);
  if (v.status == CapStatus::Unknown && v.reason == CapReason::HypothesisViolation) {
    CapabilityVerdict fallback = classify_capable(g);
    if (fallback.status != CapStatus::Unknown) v = fallback;
  }
  TheoremAReport rep = theorem_a_check(g, v);
  if (opt.machine) {
    std::cout << "theorem-a\t" << (rep.pass ? "PASS" : "FAIL") << "\t"
              << rep.central_quotient_order << "\t" << rep.derived_order << "\t"
              << rep.central_quotient_rank << "\t" << rep.quotient_exponent << "\t"
              << rep.derived_exponent << "\n";
  } else {
    if (!rep.hypotheses_ok) std::cout << "hypothesis violation: " << rep.note << "\n";
    std::cout << "|G/Z(G)| = " << rep.central_quotient_order << ", |gamma2(G)|^2 = "
              << rep.derived_order * rep.derived_order << "\n";
    std::cout << "d(G/Z(G)) = " << rep.central_quotient_rank << "\n";
    std::cout << "exponent(G/Z) = " << rep.quotient_exponent
              << ", exponent(gamma2) = " << rep.derived_exponent << "\n";
    if (!rep.quotient_invariants.empty()) {
      std::cout << "G/Z invariant factors:";
      for (auto f : rep.quotient_invariants) std::cout << " " << f;
      std::cout << "\n";
    }
    std::cout << (rep.pass ? "theorem A check: PASS" : "theorem A check: FAIL") << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

int run_verify_corollary2(const Options& opt, const std::string& path) {
  PcPresentation g = load_checked(path);
  Corollary2Report rep = corollary2_check(g);
  if (opt.machine) {
    std::cout << "corollary2\t" << (rep.pass ? "PASS" : "FAIL") << "\t"
              << (rep.derived_cyclic ? 1 : 0) << "\t" << rep.min_generators << "\t"
              << status_name(rep.capability) << "\n";
  } else {
    if (!rep.hypotheses_ok) std::cout << "hypothesis violation: " << rep.note << "\n";
    std::cout << "gamma2 cyclic: " << (rep.derived_cyclic ? "yes" : "no")
              << ", d(G) = " << rep.min_generators
              << ", capability: " << status_name(rep.capability) << "\n";
    if (!rep.note.empty() && rep.hypotheses_ok) std::cout << "note: " << rep.note << "\n";
    std::cout << (rep.pass ? "corollary 2 check: PASS" : "corollary 2 check: FAIL") << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

int run_verify_lemma3(const Options& opt, const std::string& path) {
  PcPresentation g = load_checked(path);
  Lemma3Report rep;
  try {
    rep = lemma3_reduce(g);
  } catch (const InputError& e) {
    std::cout << "hypothesis violation: " << e.what() << "\n";
    return kExitFail;
  }
  if (opt.machine) {
    std::cout << "lemma3\t" << (rep.pass ? "PASS" : "FAIL") << "\t" << rep.nilpotency_class << "\t"
              << rep.num_generators << "\t" << rep.y.size() << "\t" << rep.quotient_rank << "\n";
  } else {
    std::cout << "class " << rep.nilpotency_class << ", d(H) = " << rep.num_generators << "\n";
    if (rep.degenerate) {
      std::cout << "class below 3: Z2(H) = H, nothing to reduce (degenerate pass)\n";
    } else {
      for (std::size_t j = 0; j < rep.y.size(); ++j)
        std::cout << "y_" << j + 3 << " = x1^" << rep.beta[j] << " x_" << j + 3 << " x2^-"
                  << rep.alpha[j] << (rep.y_in_z2[j] ? "  (in Z2)" : "  (NOT in Z2)") << "\n";
      std::cout << "triple commutators [y_j, y_k, x_i] vanish: " << (rep.eq1_holds ? "yes" : "no")
                << "\n";
      std::cout << "[y_j, y_k] central: " << (rep.pairs_central ? "yes" : "no") << "\n";
      std::cout << "d(H / Z2(H)) = " << rep.quotient_rank << "\n";
    }
    std::cout << (rep.pass ? "lemma 3 check: PASS" : "lemma 3 check: FAIL") << "\n";
  }
  return rep.pass ? kExitPass : kExitFail;
}

void write_sweep_report(std::ostream& out, const SweepReport& rep) {
  out << "# fp_hash\tparams\torder\tclassification\treason\tsearch\tsearch_reason\tconflict\n";
  for (const auto& row : rep.rows) {
    out << std::hex << row.fp_hash << std::dec << "\t" << catalog_params_to_string(row.params)
        << "\t" << row.order << "\t" << status_name(row.classification.status) << "\t"
        << reason_name(row.classification.reason) << "\t" << status_name(row.search.status) << "\t"
        << reason_name(row.search.reason) << "\t" << conflict_name(row.conflict) << "\n";
  }
  if (rep.incomplete) out << "# INCOMPLETE: " << rep.incomplete_reason << "\n";
}

int run_cross_check(const Options& opt, std::uint32_t p, std::uint64_t max_order,
                    std::uint32_t budget, const std::string& report_path,
                    const std::string& witness_dir) {
  SweepReport rep = cross_validate(p, max_order, budget, opt.deterministic);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw InputError("cannot open report file: " + report_path);
    write_sweep_report(out, rep);
  }
  if (!witness_dir.empty()) {
    std::filesystem::create_directories(witness_dir);
    std::size_t k = 0;
    for (const auto& row : rep.rows)
      if (row.search.witness) {
        std::string file = witness_dir + "/witness_" + std::to_string(row.order) + "_" +
                           std::to_string(k++) + ".pcp";
        write_presentation_file(file, row.search.witness->h);
      }
  }
  write_sweep_report(std::cout, rep);
  std::size_t heat = 0, soft = 0;
  for (const auto& row : rep.rows) {
    if (row.conflict == ConflictFlag::Hard) ++heat;
    if (row.conflict == ConflictFlag::Soft) ++soft;
  }
  if (!opt.machine)
    std::cout << rep.rows.size() << " groups, " << soft << " soft conflict(s), " << heat
              << " hard conflict(s)" << (rep.incomplete ? " [INCOMPLETE]" : "") << "\n";
  if (rep.incomplete) return kExitResource;
  return rep.has_hard_conflict() ? kExitFail : kExitPass;
}

int run_enumerate(const Options& opt, std::uint32_t p, std::uint64_t max_order,
                  const std::string& out_dir) {
  auto catalog = enumerate_2gen_class2(p, max_order);
  std::filesystem::create_directories(out_dir);
  std::ofstream index(out_dir + "/index.tsv");
  if (!index) throw InputError("cannot open index file in " + out_dir);
  index << "# file\torder\tparams\tfp_hash\tverdict\treason\n";
  std::size_t k = 0;
  for (const auto& entry : catalog) {
    std::string file = "g" + std::to_string(entry.pres.order()) + "_" + std::to_string(k++) +
                       ".pcp";
    write_presentation_file(out_dir + "/" + file, entry.pres);
    CapabilityVerdict v = classify_capable(entry.pres);
    index << file << "\t" << entry.pres.order() << "\t" << catalog_params_to_string(entry.params)
          << "\t" << std::hex << entry.fp.hash() << std::dec << "\t" << status_name(v.status)
          << "\t" << reason_name(v.reason) << "\n";
  }
  if (!opt.machine)
    std::cout << "wrote " << catalog.size() << " groups and index.tsv to " << out_dir << "\n";
  else
    std::cout << "enumerate\t" << catalog.size() << "\t" << out_dir << "\n";
  return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite p-group engine: power-commutator presentations, capability, witnesses"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t cap_override = 0;
  app.add_flag("--machine", opt.machine, "one tab-separated record per result line");
  app.add_flag("!--no-deterministic", opt.deterministic,
               "allow first-found parallel witness merges (faster, ordering not reproducible)");
  app.add_option("--order-cap", cap_override,
                 "override the enumeration cap (also via PGROUP_ORDER_CAP; hard cap 16384)");

  // family build
  auto* family = app.add_subcommand("family", "construct classified presentation families");
  auto* fbuild = family->add_subcommand("build", "build one family instance");
  std::string variant, out_path;
  std::uint32_t p = 2, alpha = 1, beta = 1, gamma = 1, sigma = 0;
  fbuild->add_option("--variant", variant, "T1i | T1ii | T2i | T2ii")->required();
  fbuild->add_option("--p", p, "prime (2 for T1*, odd for T2*)")->required();
  fbuild->add_option("--alpha", alpha)->required();
  fbuild->add_option("--beta", beta)->required();
  fbuild->add_option("--gamma", gamma)->required();
  fbuild->add_option("--sigma", sigma, "T1ii only");
  fbuild->add_option("--out", out_path, "output presentation file")->required();

  // invariants
  auto* inv = app.add_subcommand("invariants", "order, class, Z, gamma2, Phi, d, exponent");
  std::string inv_file;
  inv->add_option("file", inv_file, "presentation file")->required();

  // capable decide/search
  auto* capable = app.add_subcommand("capable", "capability decisions");
  auto* decide = capable->add_subcommand("decide", "classification-based decision");
  std::string decide_file;
  decide->add_option("file", decide_file)->required();
  auto* search = capable->add_subcommand("search", "central-extension witness search");
  std::string search_file, witness_out;
  std::uint32_t budget = 1;
  search->add_option("file", search_file)->required();
  search->add_option("--budget", budget, "max new central generators (1..3)")->required();
  search->add_option("--out", witness_out, "write the witness presentation here");

  // verify
  auto* verify = app.add_subcommand("verify", "run the statement checkers");
  auto* vta = verify->add_subcommand("theorem-a", "2-generation and order of G/Z(G)");
  std::string vta_file;
  vta->add_option("file", vta_file)->required();
  auto* vc2 = verify->add_subcommand("corollary2", "gamma2 cyclic iff 2-generated");
  std::string vc2_file;
  vc2->add_option("file", vc2_file)->required();
  auto* vl3 = verify->add_subcommand("lemma3", "generator reduction modulo Z2");
  std::string vl3_file;
  vl3->add_option("file", vl3_file)->required();
  auto* vcc = verify->add_subcommand("cross-check", "classification vs witness search sweep");
  std::uint32_t cc_p = 2, cc_budget = 1;
  std::uint64_t cc_max = 64;
  std::string cc_report, cc_witness_dir;
  vcc->add_option("--p", cc_p, "prime")->required();
  vcc->add_option("--max-order", cc_max, "catalog bound")->required();
  vcc->add_option("--budget", cc_budget, "witness search budget")->required();
  vcc->add_option("--report", cc_report, "write the TSV report here");
  vcc->add_option("--witness-dir", cc_witness_dir, "write witness presentations here");

  // enumerate
  auto* enumc = app.add_subcommand("enumerate", "deduped 2-generated class-2 catalog");
  std::uint32_t en_p = 2;
  std::uint64_t en_max = 64;
  std::string en_out;
  enumc->add_option("--p", en_p, "prime")->required();
  enumc->add_option("--max-order", en_max, "catalog bound")->required();
  enumc->add_option("--out", en_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (cap_override) set_order_cap(cap_override);
    if (fbuild->parsed())
      return run_family_build(opt, variant, p, alpha, beta, gamma, sigma, out_path);
    if (inv->parsed()) return run_invariants(opt, inv_file);
    if (decide->parsed()) return run_capable_decide(opt, decide_file);
    if (search->parsed()) return run_capable_search(opt, search_file, budget, witness_out);
    if (vta->parsed()) return run_verify_theorem_a(opt, vta_file);
    if (vc2->parsed()) return run_verify_corollary2(opt, vc2_file);
    if (vl3->parsed()) return run_verify_lemma3(opt, vl3_file);
    if (vcc->parsed()) return run_cross_check(opt, cc_p, cc_max, cc_budget, cc_report, cc_witness_dir);
    if (enumc->parsed()) return run_enumerate(opt, en_p, en_max, en_out);
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}
