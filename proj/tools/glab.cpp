#include "glab/cli/battery.hpp"
#include "glab/cli/inputs.hpp"
#include "glab/graph/graph_json.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace glab;
using glab::io::Json;

struct Options {
  std::string config;
  std::vector<std::uint64_t> seeds;
  std::uint64_t samples = 0;
  std::uint64_t bound = 0;
  std::string format = "text";
  std::string out;
};

cli::ModelConfig make_config(const Options& o) {
  cli::ModelConfig c = o.config.empty() ? cli::ModelConfig{} : cli::load_config(o.config);
  if (!o.seeds.empty()) c.seeds = o.seeds;
  if (o.samples) c.bounds.samples = o.samples;
  if (o.bound) c.bounds.isotropy = o.bound;
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ParseError(o.out + ": cannot write file");
  f << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string vector_text(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

Json group_json(const FGAbelianGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion) t.push_back(d.str());
  Json j = {{"rank", g.rank}, {"torsion", t}, {"countable_rank", g.countable_rank}};
  if (g.unit_class) {
    Json u = Json::array();
    for (const auto& x : *g.unit_class) u.push_back(x.str());
    j["unit"] = u;
  } else {
    j["unit"] = nullptr;
  }
  return j;
}

int run_ktheory(const Options& o, const std::string& path) {
  const auto g = graph_from_json(io::load_json(path), path);
  const KTheory k = graph_ktheory(g);
  if (o.format == "json") {
    emit(o, json_text({{"graph", g.name()}, {"k0", group_json(k.k0)}, {"k1", group_json(k.k1)}}));
  } else {
    std::string s = k.k0.without_unit().to_string() + ", K1 rank " + std::to_string(k.k1.rank) +
                    (k.k1.countable_rank ? " (countable)" : "") + "\n";
    s += "unit: " + (k.k0.unit_class ? vector_text(*k.k0.unit_class) : std::string("none")) + "\n";
    emit(o, s);
  }
  return 0;
}

int run_snf(const Options& o, const std::string& path) {
  const IntMatrix m = cli::matrix_from_json(io::load_json(path), path);
  const SmithForm s = snf(m);
  std::vector<Integer> inv = s.invariants();
  if (o.format == "json") {
    Json d = Json::array();
    for (const auto& v : inv) d.push_back(v.str());
    emit(o, json_text({{"rows", m.rows()}, {"cols", m.cols()}, {"invariants", d}, {"rank", inv.size()},
                       {"d", s.d.to_string()}, {"p", s.p.to_string()}, {"q", s.q.to_string()}}));
  } else {
    emit(o, "invariants: " + vector_text(inv) + "\nD: " + s.d.to_string() + "\nP: " + s.p.to_string() +
                "\nQ: " + s.q.to_string() + "\n");
  }
  return 0;
}

int run_converge(const Options& o, const std::string& path) {
  const auto in = cli::sequence_from_json(io::load_json(path), path);
  const auto r = converges(in.graph, in.sequence, in.limit);
  auto cond = [](const ConditionOutcome& c) { return Json{{"verdict", to_string(c.verdict)}, {"detail", c.detail}}; };
  if (o.format == "json") {
    emit(o, json_text({{"graph", in.graph.name()},
                       {"verdict", to_string(r.verdict())},
                       {"ranges", cond(r.ranges)},
                       {"prefixes", cond(r.prefixes)},
                       {"escape", cond(r.escape)}}));
  } else {
    emit(o, "verdict: " + to_string(r.verdict()) + "\n  ranges:   " + to_string(r.ranges.verdict) + "  " +
                r.ranges.detail + "\n  prefixes: " + to_string(r.prefixes.verdict) + "  " + r.prefixes.detail +
                "\n  escape:   " + to_string(r.escape.verdict) + "  " + r.escape.detail + "\n");
  }
  return r.verdict() == Tri::undecidable ? 3 : 0;
}

int run_report(const cli::Report& rep, const Options& o) {
  emit(o, o.format == "json" ? json_text(rep.to_json()) : rep.to_text());
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for topological graphs over minimal systems"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s, bool model) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--out", o.out, "Write output to a file");
    if (model) {
      s->add_option("--config", o.config, "Model configuration (JSON)");
      s->add_option("--seed", o.seeds, "Seeds (repeatable); overrides the config");
      s->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber);
      s->add_option("--bound", o.bound, "Isotropy search bound")->check(CLI::PositiveNumber);
    }
  };

  std::string name;
  auto* check = app.add_subcommand("check", "Run one named check");
  check->add_option("name", name, "Check name (use 'list' to show them)")->required();
  common(check, true);

  auto* report = app.add_subcommand("report", "Run every check");
  common(report, true);

  std::string path;
  auto* kt = app.add_subcommand("ktheory", "K-theory of a discrete graph algebra");
  kt->add_option("graph", path, "Graph JSON")->required();
  common(kt, false);

  auto* sf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  sf->add_option("matrix", path, "Matrix JSON")->required();
  common(sf, false);

  auto* cv = app.add_subcommand("converge", "Decide convergence of a boundary-path sequence");
  cv->add_option("sequence", path, "Sequence JSON")->required();
  common(cv, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      if (name == "list") {
        for (const auto& n : cli::check_names()) std::cout << n << "\n";
        return 0;
      }
      const auto c = make_config(o);
      cli::Report rep;
      rep.config = c.to_json();
      rep.records.push_back(cli::run_check(name, c));
      return run_report(rep, o);
    }
    if (*report) return run_report(cli::run_battery(make_config(o)), o);
    if (*kt) return run_ktheory(o, path);
    if (*sf) return run_snf(o, path);
    if (*cv) return run_converge(o, path);
  } catch (const glab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const glab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
