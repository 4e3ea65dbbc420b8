// knotoid: enumerate diagrams, evaluate invariants, run classifications.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "knotoid/knotoid.hpp"

namespace {

using namespace knotoid;

constexpr int kExitBadInput = 2;
constexpr int kExitNotRealizable = 3;
constexpr int kExitUnresolved = 4;

struct EnumerateOpts {
  int crossings = 0;
  std::string surface;
  std::string out;
  std::string after;
};

int run_enumerate(const EnumerateOpts& o) {
  const Surface surface = *parse_surface(o.surface);
  std::optional<GaussCode> after;
  if (!o.after.empty()) after = parse_code(o.after);
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return kExitBadInput;
    }
  }
  long count = 0;
  realizable_diagrams(
      o.crossings, surface,
      [&](const GaussCode& c, const DiagramMap& m) {
        ++count;
        if (file.is_open()) file << diagram_record(c, surface, m).dump() << '\n';
        return true;
      },
      after);
  std::cout << "realizable: " << count << '\n';
  return 0;
}

struct InvariantOpts {
  std::string kind;
  std::string code;
};

int run_invariant(const InvariantOpts& o) {
  GaussCode c = parse_code(o.code);
  if (o.kind == "arrow") {
    std::cout << render(arrow_polynomial(c.sphere())) << '\n';
    return 0;
  }
  if (!c.outer) {
    if (c.crossings() != 0) {
      std::cerr << "error: --kind " << o.kind << " needs an extended code (outer arc labels)\n";
      return kExitBadInput;
    }
    c.outer = std::vector<int>{0};
  }
  std::cout << render(o.kind == "loop-arrow" ? loop_arrow_polynomial(c) : dbc_invariant(c)) << '\n';
  return 0;
}

struct ClassifyOpts {
  int max_crossings = 0;
  std::string surface;
  WalkParams walk;
  bool per_component = false;
  std::string resume;
  std::string checkpoint;
  std::string out;
  std::string jsonl;
};

void print_summary(std::ostream& os, const ClassificationResult& r) {
  os << "crossings primes rotatable achiral strongly_achiral\n";
  CrossingSummary total;
  for (const auto& s : summarize(r)) {
    os << s.crossings << ' ' << s.primes << ' ' << s.rotatable << ' ' << s.achiral << ' ' << s.strongly_achiral
       << '\n';
    total.primes += s.primes;
    total.rotatable += s.rotatable;
    total.achiral += s.achiral;
    total.strongly_achiral += s.strongly_achiral;
  }
  os << "total " << total.primes << ' ' << total.rotatable << ' ' << total.achiral << ' ' << total.strongly_achiral
     << '\n';
  for (const auto& cell : r.unresolved_cells) {
    os << "unresolved:";
    for (std::size_t i = 0; i < cell.size(); ++i) os << (i ? " | " : " ") << format_code(cell[i]);
    os << '\n';
  }
}

int run_classify(ClassifyOpts o) {
  const Surface surface = *parse_surface(o.surface);
  o.walk.per_node = !o.per_component;
  o.walk.threads = resolve_threads(o.walk.threads);
  if (o.checkpoint.empty()) o.checkpoint = o.resume;

  ClassificationState st;
  if (!o.resume.empty()) {
    st = load_checkpoint(o.resume, o.walk, o.walk.threads);
    if (st.surface != surface || st.max_crossings != o.max_crossings) {
      std::cerr << "error: checkpoint is for --max-crossings " << st.max_crossings << " --surface "
                << to_string(st.surface) << '\n';
      return kExitBadInput;
    }
  } else {
    st = partition(o.max_crossings, surface, o.walk.threads);
    seed_edges(st, o.walk.threads);
    merge_trivial_planar(st);
    if (!o.checkpoint.empty()) write_checkpoint(o.checkpoint, st, o.walk);
  }
  run_classification(st, o.walk, [&](const ClassificationState& s) {
    if (!o.checkpoint.empty()) write_checkpoint(o.checkpoint, s, o.walk);
  });
  const auto result = involution_quotient(st);

  const bool table_to_stdout = o.out.empty() || o.out == "-";
  if (table_to_stdout) {
    write_csv(std::cout, result);
  } else {
    std::ofstream file(o.out);
    if (!file) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return kExitBadInput;
    }
    write_csv(file, result);
  }
  if (!o.jsonl.empty()) {
    std::ofstream file(o.jsonl);
    if (!file) {
      std::cerr << "error: cannot write " << o.jsonl << '\n';
      return kExitBadInput;
    }
    const auto statuses = mark_statuses(st);
    for (std::size_t v = 0; v < st.nodes.size(); ++v) {
      nlohmann::json j{{"code", format_code(st.nodes[v])},
                       {"n", st.crossings(static_cast<int>(v))},
                       {"cell", st.cell_of[v]},
                       {"component", st.uf.find(static_cast<int>(v))},
                       {"status", to_string(statuses[v])}};
      file << j.dump() << '\n';
    }
  }
  print_summary(table_to_stdout ? std::cerr : std::cout, result);
  return result.complete ? 0 : kExitUnresolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and classify knotoid diagrams."};
  app.require_subcommand(1);
  const auto surfaces = CLI::IsMember({"sphere", "planar"});

  EnumerateOpts eo;
  auto* en = app.add_subcommand("enumerate", "Stream realizable diagrams and count them.");
  en->add_option("--crossings", eo.crossings, "Crossing number")->required()->check(CLI::Range(0, 6));
  en->add_option("--surface", eo.surface, "sphere or planar")->required()->check(surfaces);
  en->add_option("--out", eo.out, "Write diagrams as JSONL");
  en->add_option("--after", eo.after, "Resume after this code");

  InvariantOpts io;
  auto* inv = app.add_subcommand("invariant", "Evaluate an invariant of one diagram.");
  inv->add_option("--kind", io.kind, "arrow, loop-arrow or dbc-jones")
      ->required()
      ->check(CLI::IsMember({"arrow", "loop-arrow", "dbc-jones"}));
  inv->add_option("--code", io.code, "Oriented Gauss code, extended for planar invariants")->required();

  ClassifyOpts co;
  auto* cl = app.add_subcommand("classify", "Tabulate prime knotoids.");
  cl->add_option("--max-crossings", co.max_crossings, "Largest crossing number")->required()->check(CLI::Range(0, 6));
  cl->add_option("--surface", co.surface, "sphere or planar")->required()->check(surfaces);
  cl->add_option("--walk-steps", co.walk.steps, "Steps per random walk")->capture_default_str()->check(CLI::PositiveNumber);
  cl->add_option("--walk-rounds", co.walk.rounds, "Walk rounds")->capture_default_str()->check(CLI::NonNegativeNumber);
  cl->add_option("--bias", co.walk.bias, "Weight of reducing and Ω3 moves against increasing moves")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cl->add_option("--headroom", co.walk.headroom, "Crossings a walk may exceed --max-crossings by")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cl->add_option("--trivial-rounds", co.walk.trivial_rounds, "Extra rounds for the trivial sphere cell")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cl->add_option("--seed", co.walk.seed, "RNG seed")->capture_default_str();
  cl->add_flag("--per-component", co.per_component, "One walk per component instead of per diagram");
  cl->add_option("--resume", co.resume, "Continue from a checkpoint (also the default --checkpoint)");
  cl->add_option("--checkpoint", co.checkpoint, "Write a checkpoint after every round");
  cl->add_option("--out", co.out, "CSV prime table (default stdout)");
  cl->add_option("--jsonl", co.jsonl, "Per-diagram statuses as JSONL");

  cl->add_option("--threads", co.walk.threads, "Worker threads (default: KNOTOID_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (en->parsed()) return run_enumerate(eo);
    if (inv->parsed()) return run_invariant(io);
    return run_classify(co);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const NotRealizable& e) {
    std::cerr << "not realizable: " << e.what() << '\n';
    return kExitNotRealizable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
