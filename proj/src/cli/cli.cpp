// SPDX-FileCopyrightText: 2026 csgsearch authors
// SPDX-License-Identifier: Apache-2.0

#include "csgsearch/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "csgsearch/decomposition.hpp"
#include "csgsearch/dnf.hpp"
#include "csgsearch/intersection_graph.hpp"
#include "csgsearch/point_cloud.hpp"
#include "csgsearch/scene_gen.hpp"
#include "csgsearch/score.hpp"
#include "csgsearch/search_space.hpp"

namespace csgsearch {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExtractionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kScoreSeedOffset = 1000003;

struct CommonFlags {
  std::string scene;
  std::string truth;
  std::string cloud;
  std::string out;
  int resolution = 0;
  double epsilon = 0.0;
  double jitter = 0.0;
  std::uint64_t seed = 1;
  bool json = false;
};

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out, "Write the primary artifact here, plus a .json document");
  cmd->add_flag("--json", f.json, "Print the JSON document instead of text");
}

void add_bundle_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scene", f.scene, "Scene JSON file")->required();
  cmd->add_option("--truth", f.truth, "Ground-truth expression, as text or a file");
  cmd->add_option("--cloud", f.cloud, "Surface point cloud (.xyz or ASCII .ply)");
  cmd->add_option("--resolution", f.resolution,
                  "Samples per axis (default 256 in 2D, 64 in 3D)")
      ->check(CLI::Range(2, 4096));
  cmd->add_option("--epsilon", f.epsilon, "Surface band half-width (default 1e-4 x diagonal)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--jitter", f.jitter, "Sample jitter in [0, 0.5) cells")->check(CLI::Range(0.0, 0.5));
  cmd->add_option("--seed", f.seed, "Sampling seed");
  add_output_flags(cmd, f);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

fs::path sidecar(fs::path primary) {
  if (primary.extension() == ".json") return primary.replace_extension(".report.json");
  return primary.replace_extension(".json");
}

/// Expression given inline or as the path of a file holding one.
CsgExpr load_expr(const std::string& arg) {
  std::error_code ec;
  const std::string text = fs::is_regular_file(arg, ec) ? read_text(arg) : arg;
  try {
    return parse_expr(text);
  } catch (const ParseError& e) {
    throw UsageError("cannot parse expression: " + std::string(e.what()));
  }
}

struct Bundle {
  Scene scene;
  std::optional<CsgExpr> truth;
  std::optional<std::vector<Vec3>> cloud;
  SamplePlan plan;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
};

Bundle load_bundle(const CommonFlags& f) {
  Bundle b;
  try {
    b.scene = load_scene(f.scene);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const int resolution = f.resolution > 0 ? f.resolution : (b.scene.dimension == 2 ? 256 : 64);
  b.plan = b.scene.plan(resolution, f.jitter);
  b.epsilon = f.epsilon > 0.0 ? f.epsilon : b.scene.default_epsilon();
  b.seed = f.seed;
  if (const auto id = first_uncontained(b.plan, b.scene.primitives, b.epsilon))
    throw UsageError("scene bounds do not contain primitive '" + *id + "'");
  if (!f.truth.empty()) {
    b.truth = load_expr(f.truth);
    try {
      check_resolves(*b.truth, b.scene.primitives);
    } catch (const ExprError& e) {
      throw UsageError(e.what());
    }
  }
  if (!f.cloud.empty()) {
    try {
      b.cloud = read_point_cloud(f.cloud);
    } catch (const PointCloudError& e) {
      throw UsageError(f.cloud + ": " + e.what());
    }
  }
  return b;
}

void require_target(const Bundle& b) {
  if (!b.truth && !b.cloud) throw UsageError("need --truth or --cloud to define the target");
}

/// Target labels on (plan, seed): from the expression when known, else
/// inferred from the cloud.
std::vector<MembershipLabel> target_labels(const Bundle& b, const MembershipTable& table) {
  if (b.truth) return evaluate(*b.truth, table);
  return labels_from_cloud(*b.cloud, b.plan, b.seed);
}

ScoreReport score(const Bundle& b, const CsgExpr& e) {
  if (b.truth)
    return score_against_truth(e, *b.truth, b.scene.primitives, b.plan, b.seed + kScoreSeedOffset,
                                b.epsilon);
  return score_against_cloud(e, *b.cloud, b.scene.primitives, b.epsilon);
}

void print_score(std::ostream& out, const ScoreReport& r) {
  const LabelAgreement& a = r.agreement;
  out << "score (" << r.basis << "): matched=" << a.matched << " mismatched=" << a.mismatched
      << " surface_excluded=" << a.surface_excluded << " total=" << a.total
      << " match_fraction=" << std::setprecision(6) << a.match_fraction() << "\n"
      << "size: inner=" << r.metrics.inner_count << " leaves=" << r.metrics.leaf_count
      << " height=" << r.metrics.height << "\n";
}

// count ---------------------------------------------------------------------

struct CountFlags {
  std::uint64_t primitives = 0;
  std::uint64_t ops = 3;
  std::optional<unsigned> n;
  std::optional<unsigned> n_min;
  std::optional<unsigned> n_max;
  bool automatic = false;
};

int cmd_count(const CountFlags& c, const CommonFlags& f, std::ostream& out) {
  SearchSpaceReport report;
  if (c.automatic) {
    if (c.n || c.n_min) throw UsageError("--auto cannot be combined with --n or --n-min");
    report = count_trees_auto(c.primitives, c.ops, c.n_max);
  } else if (c.n) {
    if (c.n_min || c.n_max) throw UsageError("--n cannot be combined with --n-min/--n-max");
    report = count_trees_range(SearchSpaceQuery::single(c.primitives, c.ops, *c.n));
  } else if (c.n_min && c.n_max) {
    report = count_trees_range({c.primitives, c.ops, *c.n_min, *c.n_max});
  } else {
    throw UsageError("give --n, both --n-min and --n-max, or --auto");
  }

  const json doc = report_to_json(report);
  if (!f.out.empty()) write_text(f.out, doc.dump(2) + "\n");
  if (f.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "primitives: " << c.primitives << "\noperators: " << c.ops << "\n";
  if (report.heuristic) {
    out << "heuristic: n_min=" << report.heuristic->n_min << " h_max=" << std::fixed
        << std::setprecision(6) << report.heuristic->h_max << std::defaultfloat
        << " n_max=" << report.heuristic->n_max << "\n";
  }
  for (std::size_t k = 0; k < report.per_n.size(); ++k)
    out << "n=" << report.query.n_min + k << ": " << report.per_n[k] << "\n";
  out << "total: " << report.total << "\n";
  return kExitOk;
}

// gen-scene -----------------------------------------------------------------

struct GenFlags {
  std::string kind = "random";
  std::string name;
  std::size_t count = 3;
  int dimension = 3;
  std::vector<std::string> shapes;
};

int cmd_gen_scene(const GenFlags& g, const CommonFlags& f, std::ostream& out) {
  if (f.out.empty()) throw UsageError("gen-scene needs --out DIR");
  if (g.count == 0) throw UsageError("--count must be positive");
  const GeneratedScene gs = [&] {
    try {
      std::vector<ShapeKind> kinds;
      for (const std::string& name : g.shapes) {
        const auto k = parse_shape_kind(name);
        if (!k) throw std::invalid_argument("unknown shape kind '" + name + "'");
        kinds.push_back(*k);
      }
      return make_scene(g.kind, g.count, g.dimension, f.seed, kinds);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const std::string name = g.name.empty() ? gs.name : g.name;
  const Scene& s = gs.scene;
  const int resolution = f.resolution > 0 ? f.resolution : (s.dimension == 2 ? 512 : 96);
  const SamplePlan plan = s.plan(resolution, f.jitter);
  const double eps = f.epsilon > 0.0 ? f.epsilon : s.default_epsilon();
  const auto cloud = sample_surface(gs.truth, s.primitives, plan, f.seed, eps);

  const fs::path dir(f.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());
  json scene_doc = scene_to_json(s);
  scene_doc["name"] = name;
  const fs::path scene_path = dir / (name + ".json");
  const fs::path truth_path = dir / (name + ".csg");
  const fs::path cloud_path = dir / (name + ".xyz");
  write_text(scene_path, scene_doc.dump(2) + "\n");
  write_text(truth_path, serialize(gs.truth) + "\n");
  write_xyz(cloud_path, cloud);

  const json doc{{"name", name},
                 {"kind", g.kind},
                 {"seed", f.seed},
                 {"primitives", s.primitives.size()},
                 {"truth", serialize(gs.truth)},
                 {"cloud_points", cloud.size()},
                 {"epsilon", eps},
                 {"files", {scene_path.string(), truth_path.string(), cloud_path.string()}}};
  if (f.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "scene: " << scene_path.string() << " (" << s.primitives.size() << " primitives)\n"
      << "truth: " << truth_path.string() << " " << serialize(gs.truth) << "\n"
      << "cloud: " << cloud_path.string() << " (" << cloud.size() << " points)\n";
  return kExitOk;
}

// graph ---------------------------------------------------------------------

int cmd_graph(const CommonFlags& f, std::ostream& out) {
  const Bundle b = load_bundle(f);
  const MembershipTable table = MembershipTable::sample(b.scene.primitives, b.plan, b.seed, b.epsilon);
  const IntersectionGraph g = build_graph(table);
  const std::string dot = to_dot(g);
  const json doc = graph_to_json(g);
  if (!f.out.empty()) {
    write_text(f.out, dot);
    write_text(sidecar(f.out), doc.dump(2) + "\n");
  }
  if (f.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << dot;
  const ComponentPartition parts = connected_components(g);
  out << "# components: " << parts.size() << "\n";
  for (std::size_t c = 0; c < parts.size(); ++c) {
    out << "# " << c + 1 << ":";
    for (std::size_t v : parts[c]) out << " " << g.vertices()[v];
    out << "\n";
  }
  return kExitOk;
}

// extract -------------------------------------------------------------------

struct ExtractFlags {
  std::string strategy = "decompose";
  double tau = 1.0;
  bool allow_mixed = false;
};

int cmd_extract(const ExtractFlags& x, const CommonFlags& f, std::ostream& out) {
  const Bundle b = load_bundle(f);
  require_target(b);
  if (!(x.tau > 0.5 && x.tau <= 1.0)) throw UsageError("--tau must lie in (0.5, 1]");

  const MembershipTable table = MembershipTable::sample(b.scene.primitives, b.plan, b.seed, b.epsilon);
  const std::vector<MembershipLabel> target = target_labels(b, table);

  json doc{{"strategy", x.strategy}, {"target", b.truth ? "truth" : "cloud"}};
  std::optional<CsgExpr> result;
  std::vector<std::string> notes;
  try {
    if (x.strategy == "decompose") {
      ReconstructTrace trace;
      result = reconstruct(table, target, {x.tau, x.allow_mixed, true}, &trace);
      doc["trace"] = trace_to_json(trace);
    } else {
      const IntersectionGraph g = build_graph(table);
      ProductSet products = enumerate_products(table, g);
      classify_products(products, table, target, x.tau);
      const std::size_t mixed = count_status(products, ProductStatus::Mixed);
      if (mixed > 0 && !x.allow_mixed)
        throw ExtractionFailed(std::to_string(mixed) +
                               " fundamental product(s) are partly inside the target");
      resolve_mixed_by_majority(products);
      if (products.uncovered_target_samples > 0)
        notes.push_back(std::to_string(products.uncovered_target_samples) +
                        " target sample(s) lie outside every primitive");
      doc["products"] = products_to_json(products);
      if (x.strategy == "dnf") {
        result = build_dnf(products);
      } else {
        MinimizedDnf m = minimize_products(products);
        doc["minimization"] = minimization_to_json(m.minimization, products.primitive_ids.size());
        result = m.expression;
      }
    }
  } catch (const DecompositionError& e) {
    throw ExtractionFailed(e.what());
  } catch (const DnfError& e) {
    throw ExtractionFailed(e.what());
  }

  const ScoreReport report = score(b, *result);
  doc["expression"] = serialize(*result);
  doc["expression_tree"] = expr_to_json(*result);
  doc["score"] = score_to_json(report);
  doc["notes"] = notes;
  if (!f.out.empty()) {
    write_text(f.out, serialize(*result) + "\n");
    write_text(sidecar(f.out), doc.dump(2) + "\n");
  }
  if (f.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "strategy: " << x.strategy << "\nexpression: " << serialize(*result) << "\n";
  print_score(out, report);
  for (const std::string& n : notes) out << "note: " << n << "\n";
  return kExitOk;
}

// score ---------------------------------------------------------------------

int cmd_score(const std::string& expr_arg, const CommonFlags& f, std::ostream& out) {
  const Bundle b = load_bundle(f);
  require_target(b);
  const CsgExpr e = load_expr(expr_arg);
  try {
    check_resolves(e, b.scene.primitives);
  } catch (const ExprError& err) {
    throw UsageError(err.what());
  }
  const ScoreReport report = score(b, e);
  json doc = score_to_json(report);
  doc["expression"] = serialize(e);
  if (!f.out.empty()) write_text(f.out, doc.dump(2) + "\n");
  if (f.json) {
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "expression: " << serialize(e) << "\n";
  print_score(out, report);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recover CSG expressions from primitives and a sampled target solid", "csgsearch"};
  app.require_subcommand(1);

  CommonFlags common;
  CountFlags count;
  GenFlags gen;
  ExtractFlags extract;
  std::string expr_arg;

  CLI::App* count_cmd = app.add_subcommand("count", "Size of the labeled-tree search space");
  count_cmd->add_option("--primitives", count.primitives, "Number of primitives")
      ->required()
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--ops", count.ops, "Number of binary operators")->check(CLI::PositiveNumber);
  count_cmd->add_option("--n", count.n, "Exact inner-node count");
  count_cmd->add_option("--n-min", count.n_min, "Smallest inner-node count");
  count_cmd->add_option("--n-max", count.n_max, "Largest inner-node count");
  count_cmd->add_flag("--auto", count.automatic, "Range from the primitive-count heuristic");
  add_output_flags(count_cmd, common);

  CLI::App* gen_cmd = app.add_subcommand("gen-scene", "Write a scene, its truth and a surface cloud");
  gen_cmd->add_option("--kind", gen.kind, "fig2, disjoint, overlap3, chain or random")
      ->check(CLI::IsMember(scene_kinds()));
  gen_cmd->add_option("--count", gen.count, "Primitive count (disjoint, chain, random)");
  gen_cmd->add_option("--dimension", gen.dimension, "2 or 3 (random)")->check(CLI::IsMember({2, 3}));
  gen_cmd->add_option("--shapes", gen.shapes, "Shape kinds to draw from (random)")->delimiter(',');
  gen_cmd->add_option("--name", gen.name, "Base name of the written files");
  gen_cmd->add_option("--resolution", common.resolution,
                      "Cloud sampling grid per axis (default 512 in 2D, 96 in 3D)")
      ->check(CLI::Range(2, 4096));
  gen_cmd->add_option("--epsilon", common.epsilon, "Surface band half-width")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--jitter", common.jitter, "Sample jitter in [0, 0.5) cells")
      ->check(CLI::Range(0.0, 0.5));
  gen_cmd->add_option("--seed", common.seed, "Generator seed");
  add_output_flags(gen_cmd, common);

  CLI::App* graph_cmd = app.add_subcommand("graph", "Intersection graph as DOT");
  add_bundle_flags(graph_cmd, common);

  CLI::App* extract_cmd = app.add_subcommand("extract", "Recover an expression for the target");
  add_bundle_flags(extract_cmd, common);
  extract_cmd->add_option("--strategy", extract.strategy, "dnf, dnf-min or decompose")
      ->check(CLI::IsMember({"dnf", "dnf-min", "decompose"}));
  extract_cmd->add_option("--tau", extract.tau, "Purity threshold in (0.5, 1]");
  extract_cmd->add_flag("--allow-mixed", extract.allow_mixed,
                        "Resolve mixed products by majority instead of failing");

  CLI::App* score_cmd = app.add_subcommand("score", "Score an expression against the target");
  add_bundle_flags(score_cmd, common);
  score_cmd->add_option("--expr", expr_arg, "Expression to score, as text or a file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (count_cmd->parsed()) return cmd_count(count, common, out);
    if (gen_cmd->parsed()) return cmd_gen_scene(gen, common, out);
    if (graph_cmd->parsed()) return cmd_graph(common, out);
    if (extract_cmd->parsed()) return cmd_extract(extract, common, out);
    if (score_cmd->parsed()) return cmd_score(expr_arg, common, out);
  } catch (const ExtractionFailed& e) {
    err << "extraction failed: " << e.what() << "\n";
    return kExitExtractionFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace csgsearch
