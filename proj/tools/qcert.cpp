#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "qcert/dualcert.hpp"

using namespace qcert;
using namespace qcert::cli;

namespace {

struct InstanceFlags {
  Instance inst;
  std::string variant = "general";

  void add(CLI::App* app, bool with_k) {
    app->add_option("--n", inst.n, "number of qubits")->required();
    if (with_k) app->add_option("--K", inst.K, "code dimension")->default_val(1);
    app->add_option("--delta", inst.delta, "distance")->required();
    app->add_option("--variant", variant, "general, pure, selfdual, additive_I, additive_II, additive_any")
        ->default_val("general");
  }

  Instance get() {
    Instance out = inst;
    out.variant = parse_variant(variant);
    return out;
  }
};

std::vector<CodeVariant> parse_variants(const std::string& list) {
  std::vector<CodeVariant> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_variant(item));
  if (out.empty()) throw std::invalid_argument("no variants given");
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"qcert: LP and SDP bounds for quantum codes with exact certificates"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string code_file;
  auto* en = app.add_subcommand("enum", "weight enumerators of a stabilizer code");
  en->add_option("file", code_file, "generator file")->required();
  en->callback([&] { action = [&] { return cmd_enum(code_file, std::cout); }; });

  InstanceFlags bound_flags;
  std::optional<std::string> provenance;
  auto* bo = app.add_subcommand("bound", "largest K allowed by the LP bound");
  bound_flags.add(bo, false);
  bo->add_option("--out", provenance, "write provenance JSON");
  bo->callback([&] {
    action = [&] {
      auto p = bound_flags.get();
      return cmd_bound(p.n, p.delta, p.variant, provenance, std::cout);
    };
  });

  InstanceFlags cert_flags;
  CertifyOptions certify;
  std::string schedule;
  auto* ce = app.add_subcommand("certify", "search for an exact nonexistence certificate");
  cert_flags.add(ce, true);
  ce->add_option("--precision", certify.precision, "working precision in decimal digits")->default_val(60);
  ce->add_option("--denominator-schedule", schedule, "comma separated denominator bounds, e.g. 1e3,1e6");
  ce->add_option("--out", certify.out_dir, "output directory")->default_val(".");
  ce->callback([&] {
    action = [&] {
      certify.inst = cert_flags.get();
      if (!schedule.empty()) {
        certify.policy.denominator_schedule = parse_schedule(schedule);
        certify.policy.max_attempts = static_cast<int>(certify.policy.denominator_schedule.size());
      }
      return cmd_certify(certify, std::cout);
    };
  });

  std::string verify_file;
  auto* ve = app.add_subcommand("verify", "check a certificate file");
  ve->add_option("file", verify_file, "certificate")->required();
  ve->callback([&] { action = [&] { return cmd_verify(verify_file, std::cout); }; });

  TableCommand table;
  std::string table_variants = "general";
  auto* ta = app.add_subcommand("table", "table of upper bounds");
  ta->add_option("--n-min", table.n_min)->default_val(1);
  ta->add_option("--n-max", table.n_max)->default_val(8);
  ta->add_option("--delta-min", table.delta_min)->default_val(2);
  ta->add_option("--delta-max", table.delta_max)->default_val(8);
  ta->add_option("--variant", table_variants, "comma separated variants")->default_val("general");
  ta->add_option("--store", table.store, "certificate directory");
  ta->add_option("--codes", table.codes, "directory of generator files for lower bounds");
  ta->add_option("--out", table.out, "output TSV file");
  ta->callback([&] {
    action = [&] {
      table.variants = parse_variants(table_variants);
      return cmd_table(table, std::cout);
    };
  });

  auto* sdp = app.add_subcommand("sdp", "SDP instances");
  sdp->require_subcommand(1);
  InstanceFlags sdp_flags;
  std::string side = "dual";
  std::optional<std::string> sdp_out;
  unsigned digits = default_export_digits;
  unsigned sdp_precision = 60;
  auto side_option = [&](CLI::App* a) {
    a->add_option("--side", side, "dual or primal")->default_val("dual")->check(CLI::IsMember({"dual", "primal"}));
  };
  auto* sb = sdp->add_subcommand("build", "print the instance as JSON");
  sdp_flags.add(sb, true);
  side_option(sb);
  sb->add_option("--out", sdp_out);
  sb->callback([&] { action = [&] { return cmd_sdp_build(sdp_flags.get(), side, sdp_out, std::cout); }; });
  auto* se = sdp->add_subcommand("export", "write SDPA sparse format plus exact sidecar");
  sdp_flags.add(se, true);
  side_option(se);
  se->add_option("--out", sdp_out)->required();
  se->add_option("--digits", digits)->default_val(default_export_digits);
  se->callback([&] { action = [&] { return cmd_sdp_export(sdp_flags.get(), side, *sdp_out, digits, std::cout); }; });
  auto* ss = sdp->add_subcommand("solve", "solve the dual numerically");
  sdp_flags.add(ss, true);
  ss->add_option("--precision", sdp_precision)->default_val(60);
  ss->callback([&] { action = [&] { return cmd_sdp_solve(sdp_flags.get(), sdp_precision, std::cout); }; });

  int graph_n = 0, graph_delta = 0;
  std::optional<std::string> graph_out;
  auto* gr = app.add_subcommand("graph", "Lovasz theta graph of low-weight Paulis");
  gr->add_option("--n", graph_n)->required();
  gr->add_option("--delta", graph_delta)->required();
  gr->add_option("--out", graph_out, "SDPA file for theta");
  gr->callback([&] { action = [&] { return cmd_graph(graph_n, graph_delta, graph_out, std::cout); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    return action();
  } catch (const CertificateFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return malformed;
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return resource_cap;
  } catch (const DegenerateDenominator& e) {
    std::cerr << "DegenerateDenominator: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rejected;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
