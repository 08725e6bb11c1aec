#include "antitai/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "antitai/dag_algorithms.hpp"
#include "antitai/error.hpp"
#include "antitai/io.hpp"
#include "antitai/lower_bound.hpp"
#include "antitai/oracle.hpp"
#include "antitai/path_tree.hpp"
#include "antitai/separation.hpp"
#include "antitai/si_antimatching.hpp"
#include "json.hpp"

namespace antitai {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kCapWarning = 49;

struct Options {
  std::string tree1;
  std::string tree2;
  std::string dag1;
  std::string dag2;
  std::string weights;
  bool label_match = false;
  std::string path_top;
  std::string path_bottom;
  int path_in = 1;
  std::string kind = "anti_tai";
  std::string mapping;
  std::string solution;
  bool json = false;
  bool prune_zeros = false;
  std::size_t cap = kDefaultPairCap;
  double tol = kDefaultSeparationTolerance;
  unsigned threads = 1;
};

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Labels {
  std::function<std::string(NodeId)> first;
  std::function<std::string(NodeId)> second;
};

Labels tree_labels(const RootedTree& t1, const RootedTree& t2) {
  return Labels{[&t1](NodeId x) { return t1.label(x); },
                [&t2](NodeId y) { return t2.label(y); }};
}

Labels index_labels() {
  return Labels{[](NodeId x) { return std::to_string(x); },
                [](NodeId y) { return std::to_string(y); }};
}

// Prints a solver result in the text or JSON layout.
class Report {
 public:
  Report(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void print(std::string_view algorithm, double value, const PairMapping* mapping,
             const WeightMatrix* w, const Labels& labels, double runtime_ms,
             json extra = json::object()) const {
    if (opt_.json) {
      json doc;
      doc["value"] = value;
      json pairs = json::array();
      if (mapping) {
        for (Pair p : mapping->pairs()) {
          json e;
          e["i"] = p.first;
          e["j"] = p.second;
          e["label1"] = labels.first(p.first);
          e["label2"] = labels.second(p.second);
          e["w"] = w ? (*w)(p.first, p.second) : 0.0;
          pairs.push_back(std::move(e));
        }
      }
      doc["pairs"] = std::move(pairs);
      doc["algorithm"] = algorithm;
      doc["runtime_ms"] = runtime_ms;
      for (auto& [k, v] : extra.items()) doc[k] = v;
      out_ << doc.dump(2) << '\n';
      return;
    }
    out_ << "algorithm: " << algorithm << '\n' << "value: " << number(value) << '\n';
    if (!mapping) return;
    for (Pair p : mapping->pairs()) {
      out_ << labels.first(p.first) << " <-> " << labels.second(p.second);
      if (w) out_ << " (w=" << number((*w)(p.first, p.second)) << ')';
      out_ << '\n';
    }
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RootedTree load_tree(const std::string& path, const char* flag) {
  if (path.empty()) throw InvalidArgument(std::string("missing required ") + flag);
  return parse_newick(read_file(path));
}

Dag load_dag(const std::string& path, const char* flag) {
  if (path.empty()) throw InvalidArgument(std::string("missing required ") + flag);
  std::istringstream in(read_file(path));
  return read_dag(in);
}

WeightMatrix tree_weights(const Options& opt, const RootedTree& t1, const RootedTree& t2) {
  if (!opt.weights.empty()) {
    std::istringstream in(read_file(opt.weights));
    return read_weights(in, t1.size(), t2.size());
  }
  return label_match_weights(t1, t2);
}

WeightMatrix dag_weights(const Options& opt, const Dag& g1, const Dag& g2) {
  if (!opt.weights.empty()) {
    std::istringstream in(read_file(opt.weights));
    return read_weights(in, g1.size(), g2.size());
  }
  return WeightMatrix(g1.size(), g2.size(), 1.0);
}

// Solver output must satisfy its own predicate and weigh what the solver says.
template <class O1, class O2>
void self_check(const O1& t1, const O2& t2, const PairMapping& m, MappingKind kind,
                double value) {
  if (auto bad = validate_mapping(t1, t2, m, kind)) {
    throw std::logic_error("solver produced an invalid " + std::string(to_string(kind)) +
                           " mapping");
  }
  if (std::abs(m.weight() - value) > 1e-9 * std::max(1.0, std::abs(value))) {
    throw std::logic_error("reconstructed mapping weight differs from the optimal value");
  }
}

int run_path_tree(const Options& opt, std::ostream& out) {
  const RootedTree t1 = load_tree(opt.tree1, "--tree1");
  const RootedTree t2 = load_tree(opt.tree2, "--tree2");
  const WeightMatrix w = tree_weights(opt, t1, t2);
  if (opt.path_in != 1 && opt.path_in != 2) throw InvalidArgument("--path-in must be 1 or 2");
  const RootedTree& host = opt.path_in == 1 ? t1 : t2;
  const RootedTree& other = opt.path_in == 1 ? t2 : t1;
  const NodeId top = opt.path_top.empty() ? host.root() : find_unique_label(host, opt.path_top);
  NodeId bottom;
  if (!opt.path_bottom.empty()) {
    bottom = find_unique_label(host, opt.path_bottom);
  } else if (host.is_chain()) {
    bottom = host.preorder().back();
  } else {
    throw InvalidArgument("--path-bottom is required when the path tree is not a chain");
  }
  const auto start = Clock::now();
  const PathSegment path(host, top, bottom);
  const auto table = gamma_solve(other, other.root(), path, w,
                                 opt.path_in == 1 ? Side::first : Side::second);
  const PairMapping m = gamma_reconstruct(table, w, opt.prune_zeros);
  const double ms = elapsed_ms(start);
  // The mapping relates the path to the whole other tree.
  self_check(t1, t2, m, MappingKind::anti_tai, table.value());
  Report(opt, out).print("path-tree", table.value(), &m, &w, tree_labels(t1, t2), ms);
  return kExitOk;
}

int run_si(const Options& opt, std::ostream& out) {
  const RootedTree t1 = load_tree(opt.tree1, "--tree1");
  const RootedTree t2 = load_tree(opt.tree2, "--tree2");
  const WeightMatrix w = tree_weights(opt, t1, t2);
  const auto start = Clock::now();
  const SiSolution sol = si_solve(t1, t2, w, opt.threads);
  const PairMapping m = si_reconstruct(sol, opt.prune_zeros);
  const double ms = elapsed_ms(start);
  self_check(t1, t2, m, MappingKind::si, sol.value());
  Report(opt, out).print("si", sol.value(), &m, &w, tree_labels(t1, t2), ms);
  return kExitOk;
}

int run_lower_bound(const Options& opt, std::ostream& out) {
  const RootedTree t1 = load_tree(opt.tree1, "--tree1");
  const RootedTree t2 = load_tree(opt.tree2, "--tree2");
  const WeightMatrix w = tree_weights(opt, t1, t2);
  const auto start = Clock::now();
  const LowerBound lb = anti_tai_lower_bound(t1, t2, w, opt.threads, opt.prune_zeros);
  const double ms = elapsed_ms(start);
  self_check(t1, t2, lb.mapping, MappingKind::anti_tai, lb.value);
  Report(opt, out).print("lower-bound", lb.value, &lb.mapping, &w, tree_labels(t1, t2), ms);
  return kExitOk;
}

int run_dag(const Options& opt, std::ostream& out, bool antichain) {
  const Dag g1 = load_dag(opt.dag1, "--dag1");
  const Dag g2 = load_dag(opt.dag2, "--dag2");
  const WeightMatrix w = dag_weights(opt, g1, g2);
  const auto start = Clock::now();
  double value = 0.0;
  if (antichain) {
    if (!g1.is_chain()) throw InvalidArgument("--dag1 must be a chain");
    value = max_weight_antichain(build_product(g1, g2, w));
  } else {
    value = topo_delta(g1, g2, w);
  }
  const double ms = elapsed_ms(start);
  Report(opt, out).print(antichain ? "dag-antichain" : "dag-delta", value, nullptr, &w,
                         index_labels(), ms);
  return kExitOk;
}

int run_oracle(const Options& opt, std::ostream& out, std::ostream& err) {
  const RootedTree t1 = load_tree(opt.tree1, "--tree1");
  const RootedTree t2 = load_tree(opt.tree2, "--tree2");
  const WeightMatrix w = tree_weights(opt, t1, t2);
  const auto kind = parse_mapping_kind(opt.kind);
  if (!kind) throw InvalidArgument("--kind must be anti_tai, si or tai");
  if (opt.cap > kCapWarning) {
    err << "warning: --cap " << opt.cap << " above " << kCapWarning
        << " may take a very long time\n";
  }
  const auto start = Clock::now();
  OracleResult r;
  switch (*kind) {
    case MappingKind::anti_tai:
      r = brute_anti_tai(build_conflict_graph(t1, t2, w, opt.cap));
      break;
    case MappingKind::si:
      r = brute_si(t1, t2, w, opt.cap);
      break;
    case MappingKind::tai:
      r = brute_tai(build_conflict_graph(t1, t2, w, opt.cap));
      break;
  }
  const double ms = elapsed_ms(start);
  self_check(t1, t2, r.mapping, *kind, r.value);
  Report(opt, out).print("oracle-" + std::string(to_string(*kind)), r.value, &r.mapping, &w,
                         tree_labels(t1, t2), ms);
  return kExitOk;
}

int run_separate(const Options& opt, std::ostream& out) {
  const RootedTree t1 = load_tree(opt.tree1, "--tree1");
  const RootedTree t2 = load_tree(opt.tree2, "--tree2");
  if (opt.solution.empty()) throw InvalidArgument("missing required --solution");
  std::istringstream in(read_file(opt.solution));
  const FractionalSolution xhat = read_fractional(in, t1.size(), t2.size());
  const auto start = Clock::now();
  const auto cuts = separate(t1, t2, xhat, opt.tol, opt.threads);
  const double ms = elapsed_ms(start);
  for (const auto& c : cuts) self_check(t1, t2, c.pairs, MappingKind::anti_tai, c.lhs);
  if (!opt.json) {
    emit_cuts(cuts, out);
    return kExitOk;
  }
  json list = json::array();
  for (const auto& c : cuts) {
    json e;
    json pairs = json::array();
    for (Pair p : c.pairs.pairs()) pairs.push_back({p.first, p.second});
    e["pairs"] = std::move(pairs);
    e["lhs"] = c.lhs;
    e["violation"] = c.violation;
    e["family"] = c.family;
    list.push_back(std::move(e));
  }
  json extra;
  extra["cuts"] = std::move(list);
  const double top = cuts.empty() ? 0.0 : cuts.front().violation;
  Report(opt, out).print("separate", top, cuts.empty() ? nullptr : &cuts.front().pairs,
                         &xhat.values(), tree_labels(t1, t2), ms, std::move(extra));
  return kExitOk;
}

int run_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  const RootedTree t1 = load_tree(opt.tree1, "--tree1");
  const RootedTree t2 = load_tree(opt.tree2, "--tree2");
  const auto kind = parse_mapping_kind(opt.kind);
  if (!kind) throw InvalidArgument("--kind must be anti_tai, si or tai");
  if (opt.mapping.empty()) throw InvalidArgument("missing required --mapping");
  std::istringstream in(read_file(opt.mapping));
  const PairMapping raw = read_pairs(in);
  const WeightMatrix w = tree_weights(opt, t1, t2);
  const PairMapping m(std::vector<Pair>(raw.pairs().begin(), raw.pairs().end()), w);
  const auto start = Clock::now();
  const auto bad = validate_mapping(t1, t2, m, *kind);
  const double ms = elapsed_ms(start);
  json extra;
  extra["valid"] = !bad;
  if (bad) {
    std::ostringstream witness;
    witness << "(" << bad->first.first << "," << bad->first.second << ") vs ("
            << bad->second.first << "," << bad->second.second << ")";
    extra["witness"] = witness.str();
    err << "violation: " << to_string(*kind) << " predicate fails for " << witness.str()
        << '\n';
  }
  Report(opt, out).print("validate-" + std::string(to_string(*kind)), m.weight(), &m, &w,
                         tree_labels(t1, t2), ms, opt.json ? extra : json::object());
  if (!opt.json) out << (bad ? "invalid" : "valid") << '\n';
  return bad ? kExitInput : kExitOk;
}

void add_tree_inputs(CLI::App* sub, Options& opt) {
  sub->add_option("--tree1", opt.tree1, "First tree (Newick file)")->required();
  sub->add_option("--tree2", opt.tree2, "Second tree (Newick file)")->required();
  auto* wopt = sub->add_option("--weights", opt.weights, "Weights TSV: i j w");
  auto* lopt = sub->add_flag("--label-match", opt.label_match,
                             "w(x,y) = 1 iff labels are equal (default)");
  wopt->excludes(lopt);
}

void add_output(CLI::App* sub, Options& opt) {
  sub->add_flag("--json", opt.json, "Print a JSON object");
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Maximum-weight anti Tai mappings and si-antimatchings of unordered trees"};
  app.name(args.empty() ? "antitai" : args.front());
  app.require_subcommand(1);

  auto* path_tree = app.add_subcommand("path-tree", "Exact anti Tai mapping of a path and a tree");
  add_tree_inputs(path_tree, opt);
  path_tree->add_option("--path-top", opt.path_top, "Label of the path top (default: root)");
  path_tree->add_option("--path-bottom", opt.path_bottom,
                        "Label of the path bottom (default: leaf of a chain)");
  path_tree->add_option("--path-in", opt.path_in, "Tree hosting the path: 1 or 2")
      ->check(CLI::IsMember({1, 2}));
  path_tree->add_flag("--prune-zeros", opt.prune_zeros, "Drop zero-weight pairs");
  add_output(path_tree, opt);

  auto* si = app.add_subcommand("si", "Exact maximum-weight si-antimatching");
  add_tree_inputs(si, opt);
  si->add_flag("--prune-zeros", opt.prune_zeros, "Drop zero-weight pairs");
  si->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_output(si, opt);

  auto* lower = app.add_subcommand("lower-bound", "Lower bound on the two-tree anti Tai mapping");
  add_tree_inputs(lower, opt);
  lower->add_flag("--prune-zeros", opt.prune_zeros, "Drop zero-weight pairs");
  lower->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_output(lower, opt);

  auto* delta = app.add_subcommand("dag-delta", "Topological-order lower bound, chain vs DAG");
  auto* antichain =
      app.add_subcommand("dag-antichain", "Exact chain-vs-DAG value via max-weight antichain");
  for (auto* sub : {delta, antichain}) {
    sub->add_option("--dag1", opt.dag1, "Chain (edge list)")->required();
    sub->add_option("--dag2", opt.dag2, "DAG (edge list)")->required();
    sub->add_option("--weights", opt.weights, "Weights TSV: i j w (default: all 1)");
    add_output(sub, opt);
  }

  auto* oracle = app.add_subcommand("oracle", "Exhaustive solver for tiny instances");
  add_tree_inputs(oracle, opt);
  oracle->add_option("--kind", opt.kind, "anti_tai, si or tai");
  oracle->add_option("--cap", opt.cap, "Maximum number of pairs");
  add_output(oracle, opt);

  auto* sep = app.add_subcommand("separate", "Violated clique inequalities for an LP point");
  sep->add_option("--tree1", opt.tree1, "First tree (Newick file)")->required();
  sep->add_option("--tree2", opt.tree2, "Second tree (Newick file)")->required();
  sep->add_option("--solution", opt.solution, "Fractional values TSV: i j value")->required();
  sep->add_option("--tol", opt.tol, "Report cuts with lhs > 1 + tol");
  sep->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_output(sep, opt);

  auto* validate = app.add_subcommand("validate", "Check a mapping against a predicate");
  add_tree_inputs(validate, opt);
  validate->add_option("--mapping", opt.mapping, "Pairs file: i j per line")->required();
  validate->add_option("--kind", opt.kind, "anti_tai, si or tai");
  add_output(validate, opt);

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (path_tree->parsed()) return run_path_tree(opt, out);
    if (si->parsed()) return run_si(opt, out);
    if (lower->parsed()) return run_lower_bound(opt, out);
    if (delta->parsed()) return run_dag(opt, out, false);
    if (antichain->parsed()) return run_dag(opt, out, true);
    if (oracle->parsed()) return run_oracle(opt, out, err);
    if (sep->parsed()) return run_separate(opt, out);
    if (validate->parsed()) return run_validate(opt, out, err);
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << app.help();
  return kExitInput;
}

}  // namespace antitai
