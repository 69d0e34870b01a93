// Command-line front end: loads instances, emits certificates, rechecks them
// and exports DOT. Exit status 0 when the run succeeds or the checked
// statement holds, 1 on a refutation or failed recheck, 2 on any error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "partite/certificate.hpp"
#include "partite/dot.hpp"
#include "partite/error.hpp"
#include "partite/json_io.hpp"

using namespace partite;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::SchemaError, "cannot write " + path);
  out << text;
}

std::string summary(const json& cert) {
  const std::string kind = cert["kind"];
  const json& r = cert["result"];
  std::ostringstream os;
  if (kind == "hj-search") {
    os << "N=" << r["n"].get<std::size_t>() << (r["exhaustive"].get<bool>() ? " (exhaustive)" : " (sampled)");
  } else if (kind == "hom-enum") {
    os << "count=" << r["count"].get<std::size_t>();
  } else if (kind == "colimit") {
    os << "apex=" << r["apex"].get<std::size_t>() << " universal=" << (r["universal"].get<bool>() ? "yes" : "no");
  } else if (kind == "colimit-block") {
    os << "N=" << r["N"].get<std::size_t>() << " |P|=" << r["P"].size()
       << " |Z|=" << r["Z"]["structure"]["carrier"].get<std::size_t>();
  } else if (kind == "verify-ramsey") {
    os << r["verdict"].get<std::string>();
    if (r.contains("counterexample")) os << " counterexample=" << r["counterexample"].dump();
    if (r.contains("witnessCopy")) os << " witness=" << r["witnessCopy"].dump();
  } else if (kind == "partite-lemma") {
    const json& res = r["resolver"];
    os << "N=" << r["block"]["N"].get<std::size_t>() << " |Z|=" << r["block"]["Z"]["structure"]["carrier"].get<std::size_t>()
       << " resolver " << res["mode"].get<std::string>() << " over " << res["colorings"].get<std::size_t>()
       << " colourings";
  } else {
    os << "M=" << r["M"].get<std::size_t>() << " tower=" << r["tower"].dump()
       << " |Z|=" << r["Z"]["structure"]["carrier"].get<std::size_t>();
    if (r.contains("verdict")) os << " verdict=" << r["verdict"]["verdict"].get<std::string>();
  }
  return os.str() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite categorical Ramsey toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string format = "json";
  std::string out;
  app.add_option("--max-hom-set", cfg.maxHomSet, "Largest hom-set enumerated")->capture_default_str();
  app.add_option("--max-apex", cfg.maxApex, "Largest colimit apex")->capture_default_str();
  app.add_option("--max-product", cfg.maxProduct, "Largest product or disjoint sum scanned")->capture_default_str();
  app.add_option("--max-colorings", cfg.maxColorings, "Budget for exhaustive colouring scans")->capture_default_str();
  app.add_option("--trials", cfg.sampleTrials, "Sampled colourings")->capture_default_str();
  app.add_option("--seed", cfg.rngSeed, "Random seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--format", format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("-o,--out", out, "Output file (default stdout)");

  json inputs = json::object();
  std::string kind;

  auto* hj = app.add_subcommand("hj-search", "Least Hales-Jewett witness N for (alphabet, colours)");
  std::size_t alphabet = 0, colors = 0, nmax = 0, sample = 0, A = 0, B = 0, C = 0, apexBound = 0;
  hj->add_option("--alphabet", alphabet)->required();
  hj->add_option("--colors", colors)->required();
  hj->add_option("--nmax", nmax)->required();
  hj->add_option("--sample", sample, "Allow sampling with this many trials when exhaustive search is too large");

  std::string cat;
  auto* homs = app.add_subcommand("hom-enum", "Enumerate Hom(A, B)");
  homs->add_option("--cat", cat)->required();
  homs->add_option("--A", A)->required();
  homs->add_option("--B", B)->required();

  std::string input;
  auto* colim = app.add_subcommand("colimit", "Colimit of a diagram in Fin or Fin^op");
  colim->add_option("--input", input)->required();
  colim->add_option("--apex-bound", apexBound, "Check universality against cocones up to this apex");

  bool verify = false;
  auto* block = app.add_subcommand("colimit-block", "Colimit block of a line diagram");
  block->add_option("--input", input)->required();
  block->add_flag("--verify", verify, "Also check homomorphism legs and relation reflection");

  std::size_t r = 0;
  std::string mode = "exhaustive", counterexample;
  auto* ramsey = app.add_subcommand("verify-ramsey", "Decide C -> (B)^A_r");
  ramsey->add_option("--cat", cat)->required();
  ramsey->add_option("--A", A)->required();
  ramsey->add_option("--B", B)->required();
  ramsey->add_option("--C", C)->required();
  ramsey->add_option("-r,--colors", r)->required();
  ramsey->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  ramsey->add_option("--counterexample", counterexample, "Where to write a refuting colouring");

  auto* lemma = app.add_subcommand("partite-lemma", "One partite-lemma step with an exhaustive resolver check");
  lemma->add_option("--instance", input)->required();
  lemma->add_option("-r,--colors", r)->required();
  lemma->add_option("--nmax", nmax, "Largest Hales-Jewett N tried");

  std::string solver = "auto";
  std::size_t maxSize = 0;
  auto* construction = app.add_subcommand("partite-construction", "Partite construction over (Fin,<=) or (Fin,<=*)^op");
  construction->add_option("--instance", input)->required();
  construction->add_option("-r,--colors", r)->required();
  construction->add_option("--solver", solver, "auto or size=n");
  construction->add_option("--max-size", maxSize, "Largest D-witness tried by the auto solver");

  std::string variant;
  auto* solecki = app.add_subcommand("solecki", "Ordered Ramsey witness for structures K, M");
  solecki->add_option("--variant", variant)->required()->check(CLI::IsMember({"direct", "dual"}));
  solecki->add_option("--input", input, "JSON with structures K and M")->required();
  solecki->add_option("-r,--colors", r)->required();
  solecki->add_option("--solver", solver, "auto or size=n");
  solecki->add_option("--max-size", maxSize);

  std::string certPath;
  auto* re = app.add_subcommand("recheck", "Re-derive a certificate and run independent checks");
  re->add_option("certificate", certPath)->required();

  auto* dot = app.add_subcommand("export-dot", "DOT for a diagram or a colimit / colimit-block certificate");
  dot->add_option("--input", input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    cfg.validate();
    if (*re) {
      const RecheckReport rep = recheck(read_json(certPath), cfg.threads);
      if (!rep.matches) std::cerr << "recheck: re-derived result differs from the certificate\n";
      for (const auto& f : rep.failures) std::cerr << "recheck: " << f << "\n";
      std::cout << (rep.ok() ? "ok\n" : "FAILED\n");
      return rep.ok() ? 0 : 1;
    }
    if (*dot) {
      const json j = read_json(input);
      std::string text;
      if (j.contains("kind") && j["kind"] == "colimit-block") {
        Config c = config_from_json(j.at("config"), "/config");
        text = to_dot(construct_colimit_block(line_instance_from_json(j["inputs"].at("instance")), c));
      } else {
        const json& d = j.contains("kind") ? j.at("inputs").at("diagram") : j;
        const auto diagram = diagram_from_json(d, j.contains("kind") ? "/inputs/diagram" : "");
        const Colimit c = colimit(diagram, cfg);
        text = to_dot(*diagram, &c.cocone);
      }
      write_text(out, text);
      return 0;
    }

    if (*hj) {
      kind = "hj-search";
      inputs = {{"alphabet", alphabet}, {"colors", colors}, {"nmax", nmax}, {"sample", sample > 0}};
      if (sample > 0) cfg.sampleTrials = sample;
    } else if (*homs) {
      kind = "hom-enum";
      inputs = {{"category", cat}, {"A", A}, {"B", B}};
    } else if (*colim) {
      kind = "colimit";
      inputs = {{"diagram", read_json(input)}, {"apexBound", apexBound}};
    } else if (*block) {
      kind = "colimit-block";
      inputs = {{"instance", read_json(input)}, {"verify", verify}};
    } else if (*ramsey) {
      kind = "verify-ramsey";
      inputs = {{"category", cat}, {"A", A}, {"B", B}, {"C", C}, {"r", r}, {"mode", mode}};
    } else if (*lemma) {
      kind = "partite-lemma";
      inputs = {{"instance", read_json(input)}, {"r", r}};
      if (nmax) inputs["nmax"] = nmax;
    } else if (*construction) {
      kind = "partite-construction";
      inputs = {{"instance", read_json(input)}, {"r", r}, {"solver", solver}};
      if (maxSize) inputs["maxSize"] = maxSize;
    } else if (*solecki) {
      kind = "solecki";
      const json j = read_json(input);
      inputs = {{"variant", variant}, {"K", j.at("K")}, {"M", j.at("M")}, {"r", r}, {"solver", solver}};
      if (maxSize) inputs["maxSize"] = maxSize;
    }

    const json cert = make_certificate(kind, inputs, cfg);
    const bool holds = certificate_holds(cert);
    if (format == "text") {
      write_text(out, summary(cert));
    } else if (format == "dot") {
      throw Error(ErrorCode::SchemaError, "use export-dot for DOT output");
    } else {
      write_text(out, serialize(cert));
      (out.empty() || out == "-" ? std::cerr : std::cout) << summary(cert);
    }
    if (!holds && !counterexample.empty() && cert["result"].contains("counterexample")) {
      write_text(counterexample, serialize({{"points", cert["result"]["points"]},
                                            {"coloring", cert["result"]["counterexample"]}}));
    }
    return holds ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: SchemaError: " << e.what() << "\n";
    return 2;
  }
}
