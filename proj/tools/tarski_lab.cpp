// tarski-lab: fixed points of order-preserving maps on box lattices, pure
// Nash equilibria of supermodular games, satisfiability reductions, and the
// exact-rational polytope maps, with query counting throughout.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tarski/adversary.hpp"
#include "tarski/game.hpp"
#include "tarski/generators.hpp"
#include "tarski/polytope.hpp"
#include "tarski/sat_reduce.hpp"
#include "tarski/solver.hpp"
#include "tarski/uniqueness.hpp"

using namespace tarski;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitContract = 2;
constexpr int kExitCapacity = 3;

std::vector<Coord> parse_coords(const std::string& text) {
  std::vector<Coord> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("cannot parse integer list: '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::string csv_point(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ':';
    s += std::to_string(p[i]);
  }
  return s;
}

std::string csv_sides(const BoxLattice& box) {
  std::string s;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (i) s += 'x';
    s += to_string(box.side_count(i));
  }
  return s;
}

/// Appends one schema-stable row: subcommand,seed,d,N,queries,result.
void emit_csv(const std::string& path, const std::string& subcommand,
              const std::string& seed, std::size_t dim, const std::string& sides,
              std::size_t queries, const std::string& result) {
  std::ostringstream row;
  row << subcommand << ',' << seed << ',' << dim << ',' << sides << ',' << queries << ','
      << result << '\n';
  if (path == "-") {
    std::cout << row.str();
    return;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw UsageError("cannot open CSV file: " + path);
  out << row.str();
}

struct OracleSpec {
  std::unique_ptr<MonotoneOracle> oracle;
  std::string seed = "-";
  std::optional<CnfFormula> formula;  // set for cnf-backed oracles
};

/// `--oracle` sources: identity, constant:<c,...>, structured:<seed>,
/// closure:<seed>, cnf:<path>, cnf-cw:<path>:<d>, line-adv:<N>,
/// aux-adv:<N,...>, nonmono-fixture. Box-bound sources take the box from
/// --lower/--upper; cnf and adversary sources carry their own box, which is
/// validated against the flags when both are given.
OracleSpec make_oracle(const std::string& spec, std::optional<BoxLattice>& box) {
  auto need_box = [&]() -> const BoxLattice& {
    if (!box) throw UsageError("--oracle " + spec + " needs --lower and --upper");
    return *box;
  };
  auto adopt_box = [&](const BoxLattice& natural) {
    if (box && *box != natural) {
      throw UsageError("--lower/--upper " + to_string(*box) +
                       " do not match the oracle's lattice " + to_string(natural));
    }
    box = natural;
  };
  OracleSpec result;
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (kind == "identity") {
    result.oracle = std::make_unique<IdentityOracle>(need_box());
  } else if (kind == "constant") {
    result.oracle = std::make_unique<ConstantOracle>(need_box(), Point(parse_coords(arg)));
  } else if (kind == "structured") {
    result.seed = arg;
    result.oracle = gen_structured_monotone(std::stoull(arg), need_box());
  } else if (kind == "closure") {
    result.seed = arg;
    result.oracle = gen_closure_monotone(std::stoull(arg), need_box());
  } else if (kind == "nonmono-fixture") {
    result.oracle = std::make_unique<AntitoneFixtureOracle>(need_box());
  } else if (kind == "cnf") {
    result.formula = parse_dimacs_file(arg);
    result.oracle = lex_oracle_from_cnf(*result.formula);
    adopt_box(result.oracle->box());
  } else if (kind == "cnf-cw") {
    auto second = arg.rfind(':');
    if (second == std::string::npos) {
      throw UsageError("cnf-cw oracle spec is cnf-cw:<path>:<d>");
    }
    result.formula = parse_dimacs_file(arg.substr(0, second));
    result.oracle =
        cw_oracle_from_cnf(*result.formula, std::stoull(arg.substr(second + 1)));
    adopt_box(result.oracle->box());
  } else if (kind == "line-adv") {
    result.oracle = std::make_unique<LineAdversary>(std::stoll(arg));
    adopt_box(result.oracle->box());
  } else if (kind == "aux-adv") {
    result.oracle = std::make_unique<AuxAdversary>(parse_coords(arg));
    adopt_box(result.oracle->box());
  } else {
    throw UsageError("unknown oracle source: '" + spec + "'");
  }
  return result;
}

struct CommonFlags {
  std::string lower, upper, oracle_spec, order = "cw", csv;
  bool trace = false;
  bool timing = false;
};

std::optional<BoxLattice> flags_box(const CommonFlags& f) {
  if (f.lower.empty() != f.upper.empty()) {
    throw UsageError("--lower and --upper must be given together");
  }
  if (f.lower.empty()) return std::nullopt;
  return BoxLattice(Point(parse_coords(f.lower)), Point(parse_coords(f.upper)));
}

class Timer {
 public:
  explicit Timer(bool enabled) : enabled_(enabled), start_(clock::now()) {}
  ~Timer() {
    if (enabled_) {
      auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start_);
      std::cout << "time: " << ms.count() << " ms\n";
    }
  }

 private:
  using clock = std::chrono::steady_clock;
  bool enabled_;
  clock::time_point start_;
};

int cmd_find(const CommonFlags& flags) {
  Timer timer(flags.timing);
  auto box = flags_box(flags);
  OracleSpec spec = make_oracle(flags.oracle_spec, box);
  OracleSession session(*spec.oracle);
  SolveOptions opts;
  opts.record_trace = flags.trace;
  SolveResult result = flags.order == "lex" ? solve_lexicographic(session, *box, opts)
                                            : solve_componentwise(session, *box, opts);
  std::cout << "fixed point: " << result.fixed_point << "\n";
  std::cout << "queries: " << result.queries << "\n";
  if (flags.trace) {
    for (const auto& b : result.trace) std::cout << "box: " << to_string(b) << "\n";
  }
  if (spec.formula) {
    auto bits = second_fixed_point_to_assignment(*spec.formula, result.fixed_point);
    if (bits) {
      std::cout << "assignment:";
      for (bool b : *bits) std::cout << ' ' << (b ? 1 : 0);
      std::cout << "\n";
    } else {
      std::cout << "assignment: none (bottom fixed point)\n";
    }
  }
  if (!flags.csv.empty()) {
    emit_csv(flags.csv, "find", spec.seed, box->dim(), csv_sides(*box), result.queries,
             csv_point(result.fixed_point));
  }
  return kExitOk;
}

int cmd_unique(const CommonFlags& flags, const std::string& known_text) {
  Timer timer(flags.timing);
  auto box = flags_box(flags);
  OracleSpec spec = make_oracle(flags.oracle_spec, box);
  Point known(parse_coords(known_text));
  UniquenessReport report;
  if (flags.order == "lex") {
    // No sub-linear method exists on a total order; offer the full scan,
    // capacity-gated. Every lattice point is one query.
    auto fixed = brute_force_fixed_points(*spec.oracle, *box);
    if (std::find(fixed.begin(), fixed.end(), known) == fixed.end()) {
      throw UsageError("unique: known point " + to_string(known) +
                       " is not a fixed point");
    }
    report.least = fixed.front();
    report.greatest = fixed.back();
    report.unique = fixed.size() == 1;
    report.queries = static_cast<std::size_t>(box->size());
  } else {
    report = is_unique_fixed_point(*spec.oracle, *box, known);
  }
  std::cout << "least: " << report.least << "\n";
  std::cout << "greatest: " << report.greatest << "\n";
  std::cout << "unique: " << (report.unique ? "true" : "false") << "\n";
  std::cout << "queries: " << report.queries << "\n";
  if (!flags.csv.empty()) {
    emit_csv(flags.csv, "unique", spec.seed, box->dim(), csv_sides(*box), report.queries,
             report.unique ? "unique" : "multiple");
  }
  return kExitOk;
}

void print_nash(const Game& game, const NashResult& result, bool brute,
                const std::string& csv) {
  std::cout << "equilibrium: " << result.profile << "\n";
  std::cout << "queries: " << result.queries << "\n";
  if (brute) {
    std::cout << (game.has_tables()
                      ? "pure Nash profiles:"
                      : "fixed profiles of the least best response:")
              << "\n";
    for (const Point& p : brute_force_nash(game)) std::cout << "  " << p << "\n";
  }
  if (!csv.empty()) {
    emit_csv(csv, "nash", "-", game.players(), csv_sides(game.strategy_box()),
             result.queries, csv_point(result.profile));
  }
}

int cmd_nash(const std::string& game_path, bool brute, const CommonFlags& flags) {
  Timer timer(flags.timing);
  Game game = Game::from_json_file(game_path);
  NashResult result = solve_nash(game);
  print_nash(game, result, brute, flags.csv);
  return kExitOk;
}

int cmd_nash_from_cnf(const std::string& cnf_path, std::size_t players, bool brute,
                      const CommonFlags& flags) {
  Timer timer(flags.timing);
  CnfFormula f = parse_dimacs_file(cnf_path);
  Game game = Game::from_cnf(f, players);
  NashResult result = solve_nash(game);
  print_nash(game, result, brute, flags.csv);
  auto bits = second_fixed_point_to_assignment(f, result.profile);
  if (bits) {
    std::cout << "assignment:";
    for (bool b : *bits) std::cout << ' ' << (b ? 1 : 0);
    std::cout << "\n";
  } else {
    std::cout << "assignment: none (bottom equilibrium)\n";
  }
  return kExitOk;
}

int cmd_sat_probe(const std::string& cnf_path, const CommonFlags& flags) {
  Timer timer(flags.timing);
  CnfFormula f = parse_dimacs_file(cnf_path);
  if (f.num_vars > 20) {
    throw CapacityError("sat-probe walks the whole value chain; gated to n <= 20");
  }
  auto oracle = lex_oracle_from_cnf(f);
  OracleSession session(*oracle);
  FixedPointResult top = greatest_fixed_point(session, oracle->box());
  auto bits = second_fixed_point_to_assignment(f, top.point);
  if (bits) {
    std::cout << "satisfiable\n";
    std::cout << "assignment:";
    for (bool b : *bits) std::cout << ' ' << (b ? 1 : 0);
    std::cout << "\n";
  } else {
    std::cout << "unsatisfiable\n";
  }
  std::cout << "queries: " << top.queries << "\n";
  if (!flags.csv.empty()) {
    emit_csv(flags.csv, "sat-probe", "-", 1, csv_sides(oracle->box()), top.queries,
             bits ? "satisfiable" : "unsatisfiable");
  }
  return kExitOk;
}

int cmd_polytope(const std::string& input, const std::string& mode,
                 const std::string& action, const std::string& point_text,
                 const CommonFlags& flags) {
  Timer timer(flags.timing);
  Polytope P = Polytope::from_json_file(input);
  if (action == "eval") {
    if (point_text.empty()) throw UsageError("--action eval needs --point");
    Point y(parse_coords(point_text));
    if (mode == "cw") {
      LatticeHull hull = build_hull(P, OrderRelation::Componentwise);
      std::cout << "h(" << y << ") = " << h_componentwise(P, hull, y) << "\n";
    } else {
      LatticeHull hull = build_hull(P, OrderRelation::Lexicographic);
      std::cout << "h(" << y << ") = " << h_lexicographic(P, hull, y) << "\n";
    }
    return kExitOk;
  }
  if (mode != "cw") {
    throw UsageError("find-integer-point runs on the componentwise map");
  }
  auto found = integer_point_via_fixed_point(P);
  std::cout << "integer point: " << (found ? to_string(*found) : std::string("none"))
            << "\n";
  if (!flags.csv.empty()) {
    emit_csv(flags.csv, "polytope", "-", P.num_vars(), "-", 0,
             found ? csv_point(*found) : "none");
  }
  return kExitOk;
}

int cmd_adversary_report(const CommonFlags& flags) {
  Timer timer(flags.timing);
  auto box = flags_box(flags);
  OracleSpec spec = make_oracle(flags.oracle_spec, box);
  auto* line = dynamic_cast<LineAdversary*>(spec.oracle.get());
  auto* aux = dynamic_cast<AuxAdversary*>(spec.oracle.get());
  if (!line && !aux) {
    throw UsageError("adversary-report needs --oracle line-adv:<N> or aux-adv:<N,...>");
  }
  Point known = Point::filled(box->dim(), 0);
  UniquenessReport report = is_unique_fixed_point(*spec.oracle, *box, known);
  std::optional<Point> hide =
      line ? line_can_hide_second(*line) : aux_can_hide_second(*aux);
  std::size_t asked = line ? line->queried().size() : aux->queried().size();
  std::cout << "adversary: " << (line ? "line" : "aux") << " on " << to_string(*box)
            << "\n";
  std::cout << "unique: " << (report.unique ? "true" : "false") << "\n";
  std::cout << "queries: " << report.queries << "\n";
  std::cout << "distinct points asked: " << asked << "\n";
  if (hide) {
    std::cout << "second fixed point hideable: yes, at " << *hide << "\n";
  } else {
    std::cout << "second fixed point hideable: no\n";
  }
  if (!flags.csv.empty()) {
    emit_csv(flags.csv, "adversary-report", "-", box->dim(), csv_sides(*box),
             report.queries, hide ? "hideable" : "pinned");
  }
  return kExitOk;
}

int cmd_bench(const std::string& algo, const std::string& sizes_text,
              std::uint64_t seeds, std::size_t dim, const CommonFlags& flags) {
  Timer timer(flags.timing);
  std::string csv = flags.csv.empty() ? "-" : flags.csv;
  for (Coord n : parse_coords(sizes_text)) {
    if (n < 2) throw UsageError("bench sizes must be >= 2");
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
      if (algo == "2d") {
        BoxLattice box(Point{0, 0}, Point{n - 1, n - 1});
        auto oracle = gen_structured_monotone(seed, box);
        OracleSession session(*oracle);
        SolveResult r = solve_2d(session, box);
        emit_csv(csv, "bench-2d", std::to_string(seed), 2, csv_sides(box), r.queries,
                 csv_point(r.fixed_point));
      } else if (algo == "cw") {
        std::size_t d = dim == 0 ? 3 : dim;
        BoxLattice box(Point::filled(d, 0), Point::filled(d, n - 1));
        auto oracle = gen_structured_monotone(seed, box);
        OracleSession session(*oracle);
        SolveResult r = solve_componentwise(session, box);
        emit_csv(csv, "bench-cw", std::to_string(seed), d, csv_sides(box), r.queries,
                 csv_point(r.fixed_point));
      } else if (algo == "lex") {
        std::size_t d = dim == 0 ? 2 : dim;
        BoxLattice box(Point::filled(d, 0), Point::filled(d, n - 1));
        auto oracle = gen_lex_monotone(seed, box);
        OracleSession session(*oracle);
        SolveResult r = solve_lexicographic(session, box);
        emit_csv(csv, "bench-lex", std::to_string(seed), d, csv_sides(box), r.queries,
                 csv_point(r.fixed_point));
      } else if (algo == "nash") {
        std::size_t d = dim == 0 ? 2 : dim;
        std::vector<std::array<Coord, 2>> ranges(d, {0, n - 1});
        Game game = gen_structured_br_game(seed, ranges);
        NashResult r = solve_nash(game);
        emit_csv(csv, "bench-nash", std::to_string(seed), d,
                 csv_sides(game.strategy_box()), r.queries, csv_point(r.profile));
      } else {
        LineAdversary adv(n);
        UniquenessReport report = is_unique_fixed_point(adv, adv.box(), Point{0});
        emit_csv(csv, "bench-unique", std::to_string(seed), 1, csv_sides(adv.box()),
                 report.queries, report.unique ? "unique" : "multiple");
      }
    }
  }
  return kExitOk;
}

int cmd_verify(const CommonFlags& flags) {
  Timer timer(flags.timing);
  auto box = flags_box(flags);
  OracleSpec spec = make_oracle(flags.oracle_spec, box);
  auto fixed = brute_force_fixed_points(*spec.oracle, *box);
  std::cout << "brute-force fixed points: " << fixed.size() << "\n";
  bool ok = !fixed.empty();
  std::cout << "nonempty (order-preserving maps must have one): "
            << (ok ? "PASS" : "FAIL") << "\n";

  OracleSession session(*spec.oracle);
  SolveResult solved = flags.order == "lex" ? solve_lexicographic(session, *box)
                                            : solve_componentwise(session, *box);
  bool member = std::find(fixed.begin(), fixed.end(), solved.fixed_point) != fixed.end();
  ok = ok && member;
  std::cout << "solver point " << solved.fixed_point
            << " in brute-force set: " << (member ? "PASS" : "FAIL") << "\n";

  if (flags.order == "cw") {
    OracleSession down(*spec.oracle);
    Point top = greatest_fixed_point(down, *box).point;
    OracleSession up(*spec.oracle);
    Point bottom = least_fixed_point(up, *box).point;
    bool extremes = !fixed.empty() && top == fixed.back() && bottom == fixed.front();
    ok = ok && extremes;
    std::cout << "extreme fixed points match rank extremes: "
              << (extremes ? "PASS" : "FAIL") << "\n";
  }
  std::cout << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitContract;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tarski fixed points, supermodular equilibria, and their reductions"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string known, game_path, cnf_path, poly_input, poly_mode = "cw";
  std::string poly_action = "eval", poly_point, bench_algo = "2d", bench_sizes;
  std::size_t players = 3, bench_dim = 0;
  std::uint64_t bench_seeds = 5;
  bool brute = false;

  auto add_common = [&](CLI::App* cmd, bool with_box_oracle) {
    if (with_box_oracle) {
      cmd->add_option("--lower", flags.lower, "box lower corner, comma-separated");
      cmd->add_option("--upper", flags.upper, "box upper corner, comma-separated");
      cmd->add_option("--oracle", flags.oracle_spec, "oracle source")->required();
      cmd->add_option("--order", flags.order, "ordering: cw or lex")
          ->check(CLI::IsMember({"cw", "lex"}));
    }
    cmd->add_option("--csv", flags.csv, "append a CSV row to this file ('-' = stdout)");
    cmd->add_flag("--timing", flags.timing, "print wall time (human mode only)");
  };

  auto* find = app.add_subcommand("find", "find one Tarski fixed point");
  add_common(find, true);
  find->add_flag("--trace", flags.trace, "print visited sub-boxes");

  auto* unique = app.add_subcommand("unique", "decide uniqueness of a fixed point");
  add_common(unique, true);
  unique->add_option("--known", known, "a known fixed point")->required();

  auto* nash = app.add_subcommand("nash", "pure Nash equilibrium of a supermodular game");
  nash->add_option("--game", game_path, "game JSON file")->required();
  nash->add_flag("--brute-force", brute, "also enumerate all equilibria");
  add_common(nash, false);

  auto* nash_cnf = app.add_subcommand("nash-from-cnf", "equilibrium of the hardness game");
  nash_cnf->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
  nash_cnf->add_option("--players", players, "number of players (>= 3)");
  nash_cnf->add_flag("--brute-force", brute, "also enumerate all equilibria");
  add_common(nash_cnf, false);

  auto* probe = app.add_subcommand("sat-probe", "decide satisfiability via the reduction");
  probe->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
  add_common(probe, false);

  auto* poly = app.add_subcommand("polytope", "the integer-point maps");
  poly->add_option("--input", poly_input, "polytope JSON file")->required();
  poly->add_option("--mode", poly_mode, "cw or lex")->check(CLI::IsMember({"cw", "lex"}));
  poly->add_option("--action", poly_action, "eval or find-integer-point")
      ->check(CLI::IsMember({"eval", "find-integer-point"}));
  poly->add_option("--point", poly_point, "point for --action eval");
  add_common(poly, false);

  auto* adv = app.add_subcommand("adversary-report", "lower-bound adversary run");
  add_common(adv, true);

  auto* bench = app.add_subcommand("bench", "query-count benchmark CSV");
  bench->add_option("--algo", bench_algo, "2d, cw, lex, nash, or unique")
      ->check(CLI::IsMember({"2d", "cw", "lex", "nash", "unique"}));
  bench->add_option("--sizes", bench_sizes, "comma-separated side lengths")->required();
  bench->add_option("--seeds", bench_seeds, "seeds 1..k per size");
  bench->add_option("--dim", bench_dim, "dimension (defaults per algorithm)");
  add_common(bench, false);

  auto* verify = app.add_subcommand("verify", "brute-force cross-check of the solvers");
  add_common(verify, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (find->parsed()) return cmd_find(flags);
    if (unique->parsed()) return cmd_unique(flags, known);
    if (nash->parsed()) return cmd_nash(game_path, brute, flags);
    if (nash_cnf->parsed()) return cmd_nash_from_cnf(cnf_path, players, brute, flags);
    if (probe->parsed()) return cmd_sat_probe(cnf_path, flags);
    if (poly->parsed())
      return cmd_polytope(poly_input, poly_mode, poly_action, poly_point, flags);
    if (adv->parsed()) return cmd_adversary_report(flags);
    if (bench->parsed())
      return cmd_bench(bench_algo, bench_sizes, bench_seeds, bench_dim, flags);
    if (verify->parsed()) return cmd_verify(flags);
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    for (const auto& [x, fx] : e.witness()) {
      std::cerr << "witness: f(" << x << ") = " << fx << "\n";
    }
    return kExitContract;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
