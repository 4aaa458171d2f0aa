#include "margo/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "margo/characters.hpp"
#include "margo/collapse.hpp"
#include "margo/complex.hpp"
#include "margo/expfam.hpp"
#include "margo/fiber.hpp"
#include "margo/polytope.hpp"
#include "margo/space.hpp"

namespace margo::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string complex_file;
  std::string space;
  std::string g;
  std::optional<int> uniform;
  std::optional<int> degree_limit;
  std::optional<int> kmax;
  std::uint64_t ceiling = kDefaultCeiling;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string out_file;
  bool structured = false;
  std::string moves_file;
  std::string table_file;
  std::string table2_file;
  std::string collapsing_file;
  std::string theta_file;
  std::string p_file;
  std::string strategy = "pairs";
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

ConfigSpace require_space(const RunConfig& cfg) {
  if (cfg.space.empty()) throw UsageError("--space is required");
  return parse_space(cfg.space);
}

std::optional<Subset> parse_g(const RunConfig& cfg, int n) {
  if (cfg.g.empty()) return std::nullopt;
  std::vector<int> idx;
  std::stringstream ss(cfg.g);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      idx.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("--G: cannot parse '" + item + "'");
    }
  }
  Subset g = Subset::from_one_based(idx, n);
  if (g.empty()) throw UsageError("--G must be nonempty");
  return g;
}

// --complex, else --uniform, else the interval complement of --G.
SimplicialComplex resolve_complex(const RunConfig& cfg, const ConfigSpace& space) {
  std::optional<SimplicialComplex> c;
  if (!cfg.complex_file.empty()) {
    auto in = open_input(cfg.complex_file);
    c = read_complex(in);
  } else if (cfg.uniform) {
    c = uniform_complex(space.n(), *cfg.uniform);
  } else if (auto g = parse_g(cfg, space.n())) {
    c = interval_complement(space.n(), *g);
  } else {
    throw UsageError("one of --complex, --uniform or --G is required");
  }
  if (c->n() != space.n())
    throw UsageError("complex is on " + std::to_string(c->n()) + " variables but --space has " +
                     std::to_string(space.n()));
  return *c;
}

std::string facets_text(const SimplicialComplex& c) {
  std::string s;
  for (Subset f : c.facets()) s += (s.empty() ? "" : " ") + f.to_string();
  return s.empty() ? "(none)" : s;
}

std::string join(const Counts& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// Tableau lines joined by ';' for key/value output.
std::string inline_tableau(const ConfigSpace& space, const Counts& t) {
  std::string s = tableau(space, t);
  if (!s.empty()) s.pop_back();
  for (char& ch : s)
    if (ch == '\n') ch = ';';
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> read_doubles(const std::string& path) {
  auto in = open_input(path);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("'" + path + "': cannot parse '" + tok + "'");
    }
  }
  return v;
}

std::vector<Move> moves_from_matrix(const IntMatrix& m, std::size_t cells) {
  if (m.cols != cells && !(m.rows == 0))
    throw UsageError("move file has " + std::to_string(m.cols) + " columns, space has " + std::to_string(cells) +
                     " configurations");
  std::vector<Move> moves;
  for (std::size_t r = 0; r < m.rows; ++r) moves.emplace_back(Counts(m.row(r).begin(), m.row(r).end()));
  return moves;
}

void write_moves(std::ostream& out, const std::vector<Move>& moves, std::size_t cells) {
  Counts data;
  for (const auto& m : moves) data.insert(data.end(), m.entries().begin(), m.entries().end());
  write_matrix(out, moves.size(), cells, data);
}

int cmd_matrix(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  write_matrix(out, marginal_matrix(resolve_complex(cfg, space), space));
  return kExitPass;
}

int cmd_moves(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  if (!space.is_binary()) throw UsageError("moves: binary --space required");
  auto g = parse_g(cfg, space.n());
  if (!g) throw UsageError("moves: --G is required");
  write_moves(out, interval_moves(space.n(), *g), space.size());
  return kExitPass;
}

int cmd_kernel_basis(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  auto basis = kernel_basis(resolve_complex(cfg, space), space);
  Counts data;
  for (const auto& e : basis) data.insert(data.end(), e.values.begin(), e.values.end());
  write_matrix(out, basis.size(), space.size(), data);
  return kExitPass;
}

int cmd_verify_markov(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  auto complex = resolve_complex(cfg, space);
  auto g = parse_g(cfg, space.n());
  std::vector<Move> moves;
  if (!cfg.moves_file.empty()) {
    auto in = open_input(cfg.moves_file);
    moves = moves_from_matrix(read_matrix(in), space.size());
  } else if (g) {
    if (!space.is_binary()) throw UsageError("verify-markov: interval moves need a binary --space");
    moves = interval_moves(space.n(), *g);
  } else {
    throw UsageError("verify-markov: --moves or --G is required");
  }
  int limit = 0;
  if (cfg.degree_limit)
    limit = *cfg.degree_limit;
  else if (g)
    limit = 2 * (1 << (g->size() - 1)) + 2;
  else
    throw UsageError("verify-markov: --degree-limit is required without --G");
  VerifyStrategy strategy;
  if (cfg.strategy == "pairs")
    strategy = VerifyStrategy::DisjointPairs;
  else if (cfg.strategy == "exhaustive")
    strategy = VerifyStrategy::Exhaustive;
  else
    throw UsageError("--strategy must be 'pairs' or 'exhaustive'");

  auto report = verify_markov_basis(complex, space, moves, limit, {cfg.ceiling, cfg.workers}, strategy);
  const bool pass = report.verdict == Verdict::Pass;
  if (cfg.structured) {
    out << "command=verify-markov\n"
        << "facets=" << facets_text(complex) << "\n"
        << "space=" << cfg.space << "\n"
        << "moves=" << moves.size() << "\n"
        << "strategy=" << cfg.strategy << "\n"
        << "degree_limit=" << limit << "\n"
        << "fibers_checked=" << report.fibers_checked << "\n"
        << "result=" << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) {
      out << "counterexample_marginal=" << join(report.counterexample->marginal.entries) << "\n"
          << "fiber_size=" << report.connectivity->fiber_size << "\n"
          << "components=" << report.connectivity->components << "\n"
          << "witness_u=" << inline_tableau(space, report.connectivity->witness->first) << "\n"
          << "witness_v=" << inline_tableau(space, report.connectivity->witness->second) << "\n";
    }
  } else {
    out << "verify-markov\n"
        << "complex: " << facets_text(complex) << "\n"
        << "space: " << cfg.space << "\n"
        << "strategy: " << cfg.strategy << "\n"
        << "moves:\n";
    write_moves(out, moves, space.size());
    out << "fibers checked: " << report.fibers_checked << "\n";
    if (pass) {
      out << "result: PASS (verified up to degree " << limit << ")\n";
    } else {
      const auto& conn = *report.connectivity;
      out << "result: FAIL (disconnected fiber found within degree " << limit << ")\n"
          << "fiber marginal: " << join(report.counterexample->marginal.entries) << "\n"
          << "fiber size: " << conn.fiber_size << "\n"
          << "components: " << conn.components << "\n"
          << "witness u:\n"
          << tableau(space, conn.witness->first) << "witness v:\n"
          << tableau(space, conn.witness->second);
    }
  }
  return pass ? kExitPass : kExitCounterexample;
}

int cmd_degree_bound(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  auto complex = resolve_complex(cfg, space);
  if (complex.is_full()) {
    out << (cfg.structured ? "command=degree-bound\ng=none\nresult=PASS\n"
                           : "degree-bound\ng: none (every subset is a face; the toric ideal is zero)\nresult: PASS\n");
    return kExitPass;
  }
  const int g = min_nonface_cardinality(complex);
  const std::int64_t bound = g >= 1 ? (std::int64_t{1} << (g - 1)) : 1;
  const int kmax = cfg.kmax ? *cfg.kmax : static_cast<int>(std::max<std::int64_t>(bound, 1));
  auto witness = min_binomial_degree(complex, space, kmax, {cfg.ceiling, cfg.workers});

  bool pass = true;
  MoveSupports supports;
  if (witness) {
    supports = move_supports(witness->move);
    pass = witness->degree >= bound && static_cast<std::int64_t>(supports.positive.size()) >= bound &&
           static_cast<std::int64_t>(supports.negative.size()) >= bound;
  }
  const auto pos = witness ? witness->move.positive() : Counts{};
  const auto neg = witness ? witness->move.negative() : Counts{};
  if (cfg.structured) {
    out << "command=degree-bound\n"
        << "facets=" << facets_text(complex) << "\n"
        << "space=" << cfg.space << "\n"
        << "g=" << g << "\n"
        << "bound=" << bound << "\n"
        << "kmax=" << kmax << "\n";
    if (witness) {
      out << "witness_degree=" << witness->degree << "\n"
          << "square_free=" << (witness->square_free ? "yes" : "no") << "\n"
          << "positive_support=" << supports.positive.size() << "\n"
          << "negative_support=" << supports.negative.size() << "\n"
          << "witness_move=" << join(witness->move.entries()) << "\n"
          << "positive_tableau=" << inline_tableau(space, pos) << "\n"
          << "negative_tableau=" << inline_tableau(space, neg) << "\n";
    } else {
      out << "witness_degree=none\n";
    }
    out << "result=" << (pass ? "PASS" : "FAIL") << "\n";
  } else {
    out << "degree-bound\n"
        << "complex: " << facets_text(complex) << "\n"
        << "space: " << cfg.space << "\n"
        << "g: " << g << "\n"
        << "bound 2^(g-1): " << bound << "\n";
    if (witness) {
      out << "witness degree: " << witness->degree << "\n"
          << "square-free: " << (witness->square_free ? "yes" : "no") << "\n"
          << "support sizes: " << supports.positive.size() << " positive, " << supports.negative.size()
          << " negative\n"
          << "witness move:\n";
      write_moves(out, {witness->move}, space.size());
      out << "positive tableau:\n" << tableau(space, pos) << "negative tableau:\n" << tableau(space, neg);
    } else {
      out << "witness degree: none up to " << kmax << "\n";
    }
    out << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitPass : kExitCounterexample;
}

int cmd_neighborly(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  auto complex = resolve_complex(cfg, space);
  std::optional<int> g;
  if (!complex.is_full()) g = min_nonface_cardinality(complex);
  const int bound = g ? (*g >= 1 ? (1 << (*g - 1)) - 1 : 0) : static_cast<int>(space.size());
  int kmax = cfg.kmax ? *cfg.kmax : (g ? bound + 1 : static_cast<int>(space.size()));
  kmax = std::max(kmax, 1);
  auto report = neighborliness(complex, space, kmax, {cfg.ceiling, cfg.workers});
  const bool pass = report.limit_reached || report.k >= bound;

  auto configs = [&](const std::vector<std::size_t>& ys, char sep) {
    std::string s;
    for (auto y : ys) s += (s.empty() ? "" : std::string(1, sep)) + space.format(y);
    return s;
  };
  out << "k=" << report.k << "\n";
  const char* kv = cfg.structured ? "=" : ": ";
  out << (cfg.structured ? "bound" : "bound 2^(g-1)-1") << kv << bound << "\n";
  out << (cfg.structured ? "kmax" : "checked up to size") << kv << kmax << "\n";
  if (report.witness) {
    const auto& w = *report.witness;
    out << "witness" << kv << configs(w.query, ' ') << "\n";
    out << "lambda" << kv;
    bool first = true;
    for (std::size_t x = 0; x < w.lambda.size(); ++x) {
      if (sgn(w.lambda[x]) == 0) continue;
      out << (first ? "" : " ") << space.format(x) << ":" << to_string(w.lambda[x]);
      first = false;
    }
    out << "\n";
    out << (cfg.structured ? "certificate" : "certificate check") << kv
        << (verify_certificate(complex, space, w) ? "ok" : "INVALID") << "\n";
  }
  out << "result" << kv << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitPass : kExitCounterexample;
}

int cmd_collapse(const RunConfig& cfg, std::ostream& out) {
  if (cfg.collapsing_file.empty() || cfg.table_file.empty())
    throw UsageError("collapse: --collapsing and --table are required");
  auto cin = open_input(cfg.collapsing_file);
  Collapsing c = read_collapsing(cin);
  auto tin = open_input(cfg.table_file);
  ContingencyTable u = read_table(tin);
  auto image = collapse_table(c, u);

  std::size_t checks = 0, failures = 0;
  for (Subset b : all_subsets(u.space.n()))
    for (std::size_t k = 0; k < c.target().local_size(b); ++k) {
      ++checks;
      if (!verify_phi_identity(c, u, b, c.target().local_config(k, b))) ++failures;
    }
  std::optional<bool> commutes;
  if (!cfg.table2_file.empty()) {
    auto vin = open_input(cfg.table2_file);
    ContingencyTable v = read_table(vin);
    auto complex = resolve_complex(cfg, u.space);
    commutes = collapse_commutes(complex, c, u, v);
  }
  const bool pass = failures == 0 && commutes.value_or(true);
  const char* kv = cfg.structured ? "=" : ": ";
  out << (cfg.structured ? "collapsed" : "collapsed table") << kv << "\n";
  write_table(out, image);
  out << (cfg.structured ? "phi_identity" : "phi identity") << kv << (failures ? "FAIL" : "PASS") << " (" << checks
      << " checks)\n";
  if (commutes) out << (cfg.structured ? "commutes" : "marginals commute") << kv << (*commutes ? "PASS" : "FAIL") << "\n";
  out << "result" << kv << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitPass : kExitCounterexample;
}

int cmd_mi(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  if (cfg.p_file.empty()) throw UsageError("mi: --p is required");
  auto p = make_density(read_doubles(cfg.p_file));
  if (p.p.size() != space.size()) throw UsageError("mi: --p length does not match --space");
  out << (cfg.structured ? "multiinformation=" : "multiinformation: ") << format_double(multiinformation(p, space))
      << "\n";
  return kExitPass;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  auto space = require_space(cfg);
  auto complex = resolve_complex(cfg, space);
  if (cfg.theta_file.empty()) throw UsageError("density: --theta is required");
  auto theta = read_doubles(cfg.theta_file);
  auto p = density(complex, space, theta);
  for (std::size_t x = 0; x < p.p.size(); ++x)
    out << space.format(x) << (cfg.structured ? "=" : " ") << format_double(p.p[x]) << "\n";
  return kExitPass;
}

int cmd_tableau(const RunConfig& cfg, std::ostream& out) {
  if (cfg.table_file.empty()) throw UsageError("tableau: --table is required");
  auto in = open_input(cfg.table_file);
  out << tableau(read_table(in));
  return kExitPass;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "matrix") return cmd_matrix(cfg, out);
  if (cfg.command == "moves") return cmd_moves(cfg, out);
  if (cfg.command == "kernel-basis") return cmd_kernel_basis(cfg, out);
  if (cfg.command == "verify-markov") return cmd_verify_markov(cfg, out);
  if (cfg.command == "degree-bound") return cmd_degree_bound(cfg, out);
  if (cfg.command == "neighborly") return cmd_neighborly(cfg, out);
  if (cfg.command == "collapse") return cmd_collapse(cfg, out);
  if (cfg.command == "mi") return cmd_mi(cfg, out);
  if (cfg.command == "density") return cmd_density(cfg, out);
  if (cfg.command == "tableau") return cmd_tableau(cfg, out);
  throw UsageError("unknown subcommand");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("MARGO_CEILING")) {
    try {
      cfg.ceiling = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: MARGO_CEILING is not a number\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Marginal polytopes, Markov bases and neighborliness of hierarchical models", "margo"};
  app.require_subcommand(1, 1);
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"matrix", "emit the marginal matrix A"},
      {"moves", "emit the interval moves for the complement of [G, N]"},
      {"kernel-basis", "emit the character kernel basis e_B, B a non-face"},
      {"verify-markov", "check that a move set connects every fiber up to a degree bound"},
      {"degree-bound", "find the minimal binomial degree and compare with 2^(g-1)"},
      {"neighborly", "certify neighborliness of the marginal polytope"},
      {"collapse", "apply a collapsing map to a table and check the commutation identities"},
      {"mi", "multiinformation of a density"},
      {"density", "exponential family density for parameters theta"},
      {"tableau", "print a table in tableau notation"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    sub->add_option("--complex", cfg.complex_file, "complex file");
    sub->add_option("--space", cfg.space, "cardinalities q1,q2,...");
    sub->add_option("--G", cfg.g, "subset G as i,j,...");
    sub->add_option("--uniform", cfg.uniform, "use all k-subsets as facets");
    sub->add_option("--degree-limit", cfg.degree_limit, "degree bound T")->check(CLI::NonNegativeNumber);
    sub->add_option("--kmax", cfg.kmax, "largest size or degree to search")->check(CLI::PositiveNumber);
    sub->add_option("--ceiling", cfg.ceiling, "resource ceiling (enumerated objects)")->check(CLI::PositiveNumber);
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--out", cfg.out_file, "write the report to a file");
    sub->add_flag("--structured", cfg.structured, "key=value report lines");
    sub->add_option("--moves", cfg.moves_file, "move file (matrix format, one move per row)");
    sub->add_option("--table", cfg.table_file, "table file");
    sub->add_option("--table2", cfg.table2_file, "second table file, same fiber");
    sub->add_option("--collapsing", cfg.collapsing_file, "collapsing file");
    sub->add_option("--theta", cfg.theta_file, "parameter vector file");
    sub->add_option("--p", cfg.p_file, "probability vector file");
    sub->add_option("--strategy", cfg.strategy, "verify-markov fiber selection: pairs|exhaustive");
  }

  std::vector<std::string> argv_storage{"margo"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream report;
  int code = kExitPass;
  try {
    code = dispatch(cfg, report);
  } catch (const ResourceCeilingExceeded& e) {
    err << "resource ceiling: " << e.what() << "\n";
    return kExitCeiling;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!cfg.out_file.empty()) {
    std::ofstream file(cfg.out_file);
    if (!file) {
      err << "error: cannot write '" << cfg.out_file << "'\n";
      return kExitUsage;
    }
    file << report.str();
  } else {
    out << report.str();
  }
  return code;
}

}  // namespace margo::cli
