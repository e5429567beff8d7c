// rgmx: reduced Google matrix toolkit
//
// Subcommands wire graph ingestion, global PageRank, the reduced-matrix
// decomposition, link-perturbation sensitivity, and friend-network extraction
// into reproducible runs: identical configs produce byte-identical artifacts,
// and every run leaves a manifest with content hashes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgmx/errors.hpp"
#include "rgmx/exports.hpp"
#include "rgmx/graph.hpp"
#include "rgmx/netstruct.hpp"
#include "rgmx/pagerank.hpp"
#include "rgmx/reduced.hpp"
#include "rgmx/sensitivity.hpp"
#include "rgmx/subset.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string graph;
  std::string subset;
  std::string labels;
  std::string out = "out";

  double alpha = 0.85;
  double tol = 1e-12;
  std::uint32_t max_iters = 10000;
  double series_tol = 1e-12;
  std::uint64_t max_series_terms = 100000;
  double delta = 0.03;
  int threads = 0;

  std::string source;  // member reference: display name or node id
  std::string target;
  bool influence_map = false;
  std::string country_link;
  std::string country_category = "country";

  std::string seeds;  // comma-separated member references
  bool seed_top_per_category = false;
  std::uint64_t k = 4;
  std::string filter;
  bool bipartite = false;
  std::uint64_t k_groups = 2;
  std::uint64_t k_countries = 2;

  std::string heatmap_category;

  json to_json() const {
    return json{{"graph", graph},
                {"subset", subset},
                {"labels", labels},
                {"out", out},
                {"alpha", alpha},
                {"tol", tol},
                {"max_iters", max_iters},
                {"series_tol", series_tol},
                {"max_series_terms", max_series_terms},
                {"delta", delta},
                {"threads", threads},
                {"source", source},
                {"target", target},
                {"influence_map", influence_map},
                {"country_link", country_link},
                {"country_category", country_category},
                {"seeds", seeds},
                {"seed_top_per_category", seed_top_per_category},
                {"k", k},
                {"filter", filter},
                {"bipartite", bipartite},
                {"k_groups", k_groups},
                {"k_countries", k_countries},
                {"heatmap_category", heatmap_category}};
  }

  static RunConfig from_json(const json& j) {
    RunConfig c;
    const json defaults = c.to_json();
    for (const auto& [key, value] : j.items())
      if (!defaults.contains(key))
        rgmx::throw_error(rgmx::ErrorCategory::Config, "unknown config key '" + key + "'");
    auto get = [&](const char* key, auto& slot) {
      if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("graph", c.graph);
    get("subset", c.subset);
    get("labels", c.labels);
    get("out", c.out);
    get("alpha", c.alpha);
    get("tol", c.tol);
    get("max_iters", c.max_iters);
    get("series_tol", c.series_tol);
    get("max_series_terms", c.max_series_terms);
    get("delta", c.delta);
    get("threads", c.threads);
    get("source", c.source);
    get("target", c.target);
    get("influence_map", c.influence_map);
    get("country_link", c.country_link);
    get("country_category", c.country_category);
    get("seeds", c.seeds);
    get("seed_top_per_category", c.seed_top_per_category);
    get("k", c.k);
    get("filter", c.filter);
    get("bipartite", c.bipartite);
    get("k_groups", c.k_groups);
    get("k_countries", c.k_countries);
    get("heatmap_category", c.heatmap_category);
    return c;
  }
};

/// Records artifacts as they are written so a failed run can remove its
/// partial outputs, and a successful one can hash everything it produced.
class ArtifactTracker {
public:
  explicit ArtifactTracker(fs::path out_dir) : out_dir_(std::move(out_dir)) {}

  fs::path reserve(std::string_view name) {
    fs::create_directories(out_dir_);
    fs::path p = out_dir_ / name;
    written_.push_back(p);
    return p;
  }

  void discard_all() noexcept {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  void write_manifest(const std::string& subcommand, const RunConfig& cfg) {
    json artifacts = json::array();
    for (const auto& p : written_)
      artifacts.push_back(json{{"path", p.filename().string()},
                               {"bytes", fs::file_size(p)},
                               {"sha256", rgmx::sha256_file(p)}});
    json manifest{{"tool", "rgmx"},
                  {"version", kVersion},
                  {"subcommand", subcommand},
                  {"config_hash", rgmx::sha256_string(cfg.to_json().dump())},
                  {"config", cfg.to_json()},
                  {"artifacts", artifacts}};
    std::ofstream out(out_dir_ / "manifest.json", std::ios::binary);
    if (!out)
      rgmx::throw_error(rgmx::ErrorCategory::Io,
                        "cannot write manifest: " + (out_dir_ / "manifest.json").string());
    out << manifest.dump(2) << "\n";
  }

  const std::vector<fs::path>& written() const { return written_; }

private:
  fs::path out_dir_;
  std::vector<fs::path> written_;
};

rgmx::GoogleParams google_params(const RunConfig& cfg) {
  rgmx::GoogleParams p;
  p.alpha = cfg.alpha;
  p.tol = cfg.tol;
  p.max_iters = cfg.max_iters;
  p.validate();
  return p;
}

rgmx::ReducedOptions reduced_options(const RunConfig& cfg) {
  rgmx::ReducedOptions o;
  o.series_tol = cfg.series_tol;
  o.max_series_terms = cfg.max_series_terms;
  return o;
}

rgmx::DirectedGraph load_graph(const RunConfig& cfg) {
  if (cfg.graph.empty())
    rgmx::throw_error(rgmx::ErrorCategory::Config, "--graph is required");
  auto data = rgmx::load_edge_list(cfg.graph);
  std::cerr << "loaded " << data.graph.num_nodes() << " nodes, " << data.graph.num_edges()
            << " edges (" << data.report.dangling_nodes << " dangling, "
            << data.report.duplicates_removed << " duplicates collapsed, "
            << data.report.self_loops << " self-loops)\n";
  if (!cfg.labels.empty())
    data.graph.set_labels(rgmx::load_labels(cfg.labels, data.graph.num_nodes()));
  return std::move(data.graph);
}

rgmx::SubsetSpec load_subset_spec(const RunConfig& cfg, const rgmx::DirectedGraph& graph) {
  if (cfg.subset.empty())
    rgmx::throw_error(rgmx::ErrorCategory::Config, "--subset is required for this subcommand");
  return rgmx::load_subset(cfg.subset, graph);
}

/// Member reference: exact display name first, then a bare node id.
std::size_t resolve_member(const rgmx::SubsetSpec& subset, const std::string& ref) {
  std::optional<std::size_t> by_name;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset.member(k).display_name == ref) {
      if (by_name)
        rgmx::throw_error(rgmx::ErrorCategory::Config,
                          "member name '" + ref + "' is ambiguous; use the node id");
      by_name = k;
    }
  }
  if (by_name) return *by_name;
  try {
    const unsigned long id = std::stoul(ref);
    if (auto idx = subset.index_of_node(static_cast<rgmx::NodeId>(id))) return *idx;
  } catch (const std::exception&) {
  }
  rgmx::throw_error(rgmx::ErrorCategory::Config,
                    "'" + ref + "' matches no subset member (by name or node id)");
}

std::vector<std::size_t> resolve_seeds(const RunConfig& cfg, const rgmx::SubsetSpec& subset,
                                       const rgmx::ReducedSet& rs) {
  std::vector<std::size_t> seeds;
  auto add = [&](std::size_t m) {
    if (std::find(seeds.begin(), seeds.end(), m) == seeds.end()) seeds.push_back(m);
  };
  if (!cfg.seeds.empty()) {
    std::size_t pos = 0;
    while (pos <= cfg.seeds.size()) {
      const auto comma = cfg.seeds.find(',', pos);
      const std::string ref =
          cfg.seeds.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!ref.empty()) add(resolve_member(subset, ref));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (cfg.seed_top_per_category) {
    for (const auto& category : subset.categories()) {
      if (category == cfg.country_category) continue;
      std::optional<std::size_t> best;
      for (std::size_t k : subset.members_with_category(category))
        if (!best || rs.local_rank[k] < rs.local_rank[*best]) best = k;
      if (best) add(*best);
    }
  }
  if (seeds.empty())
    rgmx::throw_error(rgmx::ErrorCategory::Config,
                      "no seeds: pass --seeds or --seed-top-per-category");
  return seeds;
}

void run_pagerank_stage(const RunConfig& cfg, const rgmx::DirectedGraph& graph,
                        const rgmx::PageRankResult& pr, const rgmx::SubsetSpec* subset,
                        ArtifactTracker& tracker) {
  rgmx::write_pagerank_csv(tracker.reserve("pagerank.csv"), pr);
  rgmx::write_pagerank_summary_json(tracker.reserve("pagerank_summary.json"), google_params(cfg),
                                    pr);
  if (subset)
    rgmx::write_local_rank_csv(tracker.reserve("local_rank.csv"), rgmx::local_rank(pr, *subset),
                               *subset);
  (void)graph;
}

void run_reduce_stage(const RunConfig& cfg, const rgmx::ReducedSet& rs,
                      const rgmx::SubsetSpec& subset, ArtifactTracker& tracker) {
  rgmx::write_matrix_csv(tracker.reserve("gr.csv"), rs.gr, subset);
  rgmx::write_matrix_csv(tracker.reserve("grr.csv"), rs.grr, subset);
  rgmx::write_matrix_csv(tracker.reserve("gpr.csv"), rs.gpr, subset);
  rgmx::write_matrix_csv(tracker.reserve("gqrd.csv"), rs.gqrd, subset);
  rgmx::write_matrix_csv(tracker.reserve("gqrnd.csv"), rs.gqrnd, subset);
  rgmx::write_reduced_sidecar_json(tracker.reserve("reduced_summary.json"), rs);
  if (!cfg.heatmap_category.empty())
    rgmx::write_heatmap_csv(tracker.reserve("heatmap.csv"), rs, subset, cfg.heatmap_category);
}

bool sensitivity_requested(const RunConfig& cfg) {
  return (!cfg.source.empty() && !cfg.target.empty()) || cfg.influence_map ||
         !cfg.country_link.empty();
}

void run_sensitivity_stage(const RunConfig& cfg, const rgmx::ReducedSet& rs,
                           const rgmx::SubsetSpec& subset, ArtifactTracker& tracker) {
  if (!cfg.source.empty() || !cfg.target.empty()) {
    if (cfg.source.empty() || cfg.target.empty())
      rgmx::throw_error(rgmx::ErrorCategory::Config, "--source and --target go together");
    rgmx::Perturbation pert{resolve_member(subset, cfg.source),
                            resolve_member(subset, cfg.target), cfg.delta};
    const auto report = rgmx::sensitivity(rs, pert);
    rgmx::write_sensitivity_csv(tracker.reserve("sensitivity.csv"), report, subset);
    rgmx::write_sensitivity_json(tracker.reserve("sensitivity_summary.json"), report);
  }

  const auto countries = subset.members_with_category(cfg.country_category);
  std::vector<std::size_t> groups;
  for (std::size_t k = 0; k < subset.size(); ++k)
    if (subset.member(k).category != cfg.country_category) groups.push_back(k);

  if (cfg.influence_map) {
    if (countries.empty() || groups.empty())
      rgmx::throw_error(rgmx::ErrorCategory::Config,
                        "influence map needs both '" + cfg.country_category +
                            "' members and group members in the catalog");
    const auto table = rgmx::influence_map(rs, groups, countries, cfg.delta, cfg.threads);
    rgmx::write_influence_csv(tracker.reserve("influence_map.csv"), table, subset);
    rgmx::write_influence_json(tracker.reserve("influence_map_summary.json"), table,
                               "influence_map");
  }
  if (!cfg.country_link.empty()) {
    const std::size_t c = resolve_member(subset, cfg.country_link);
    const auto table = rgmx::country_link_matrix(rs, c, groups, countries, cfg.delta, cfg.threads);
    rgmx::write_influence_csv(tracker.reserve("country_link.csv"), table, subset);
    rgmx::write_influence_json(tracker.reserve("country_link_summary.json"), table,
                               "country_link");
  }
}

bool friends_requested(const RunConfig& cfg) {
  return !cfg.seeds.empty() || cfg.seed_top_per_category;
}

void run_friends_stage(const RunConfig& cfg, const rgmx::ReducedSet& rs,
                       const rgmx::SubsetSpec& subset, ArtifactTracker& tracker) {
  const auto seeds = resolve_seeds(cfg, subset, rs);
  rgmx::FriendNetwork net;
  if (cfg.bipartite) {
    net = rgmx::bipartite_closure(rs, subset, seeds, cfg.k_groups, cfg.k_countries,
                                  cfg.country_category);
  } else {
    rgmx::CategoryFilter filter;
    if (!cfg.filter.empty())
      filter = [want = cfg.filter](std::string_view c) { return c == want; };
    net = rgmx::friend_closure(rs, subset, seeds, cfg.k, filter);
  }
  std::cerr << "friend network: " << net.nodes.size() << " nodes, " << net.edges.size()
            << " edges, " << net.generations << " generations\n";
  rgmx::write_gexf(tracker.reserve("friends.gexf"), net, subset, rs);
  rgmx::write_dot(tracker.reserve("friends.dot"), net, subset, rs);
  rgmx::write_friend_edges_csv(tracker.reserve("friends_edges.csv"), net, subset);
}

std::vector<std::string> planned_artifacts(const std::string& sub, const RunConfig& cfg) {
  std::vector<std::string> names;
  const bool with_subset = !cfg.subset.empty();
  if (sub == "pagerank" || sub == "pipeline") {
    names.insert(names.end(), {"pagerank.csv", "pagerank_summary.json"});
    if (with_subset && (sub == "pipeline" || !cfg.subset.empty())) names.push_back("local_rank.csv");
  }
  if (sub == "reduce" || sub == "pipeline") {
    names.insert(names.end(),
                 {"gr.csv", "grr.csv", "gpr.csv", "gqrd.csv", "gqrnd.csv", "reduced_summary.json"});
    if (!cfg.heatmap_category.empty()) names.push_back("heatmap.csv");
  }
  if (sub == "sensitivity" || (sub == "pipeline" && sensitivity_requested(cfg))) {
    if (!cfg.source.empty() && !cfg.target.empty())
      names.insert(names.end(), {"sensitivity.csv", "sensitivity_summary.json"});
    if (cfg.influence_map)
      names.insert(names.end(), {"influence_map.csv", "influence_map_summary.json"});
    if (!cfg.country_link.empty())
      names.insert(names.end(), {"country_link.csv", "country_link_summary.json"});
  }
  if (sub == "friends" || (sub == "pipeline" && friends_requested(cfg)))
    names.insert(names.end(), {"friends.gexf", "friends.dot", "friends_edges.csv"});
  names.push_back("manifest.json");
  return names;
}

int run(const std::string& sub, const RunConfig& cfg, bool manifest_only) {
  if (manifest_only) {
    json planned = json::array();
    for (const auto& name : planned_artifacts(sub, cfg)) planned.push_back(name);
    json manifest{{"tool", "rgmx"},
                  {"version", kVersion},
                  {"subcommand", sub},
                  {"config_hash", rgmx::sha256_string(cfg.to_json().dump())},
                  {"config", cfg.to_json()},
                  {"planned_artifacts", planned}};
    std::cout << manifest.dump(2) << "\n";
    return 0;
  }

  ArtifactTracker tracker(cfg.out);
  try {
    const auto graph = load_graph(cfg);

    if (sub == "pagerank") {
      const auto pr = rgmx::pagerank(graph, google_params(cfg), cfg.threads);
      std::optional<rgmx::SubsetSpec> subset;
      if (!cfg.subset.empty()) subset = load_subset_spec(cfg, graph);
      run_pagerank_stage(cfg, graph, pr, subset ? &*subset : nullptr, tracker);
    } else if (sub == "reduce") {
      const auto subset = load_subset_spec(cfg, graph);
      const auto rs =
          rgmx::compute_reduced(graph, google_params(cfg), subset, reduced_options(cfg), cfg.threads);
      run_reduce_stage(cfg, rs, subset, tracker);
    } else if (sub == "sensitivity") {
      if (!sensitivity_requested(cfg))
        rgmx::throw_error(rgmx::ErrorCategory::Config,
                          "pick a mode: --source/--target, --influence-map, or --country-link");
      const auto subset = load_subset_spec(cfg, graph);
      const auto rs =
          rgmx::compute_reduced(graph, google_params(cfg), subset, reduced_options(cfg), cfg.threads);
      run_sensitivity_stage(cfg, rs, subset, tracker);
    } else if (sub == "friends") {
      const auto subset = load_subset_spec(cfg, graph);
      const auto rs =
          rgmx::compute_reduced(graph, google_params(cfg), subset, reduced_options(cfg), cfg.threads);
      run_friends_stage(cfg, rs, subset, tracker);
    } else if (sub == "pipeline") {
      const auto subset = load_subset_spec(cfg, graph);
      const auto pr = rgmx::pagerank(graph, google_params(cfg), cfg.threads);
      run_pagerank_stage(cfg, graph, pr, &subset, tracker);
      const auto rs =
          rgmx::compute_reduced(graph, google_params(cfg), subset, reduced_options(cfg), cfg.threads);
      run_reduce_stage(cfg, rs, subset, tracker);
      if (sensitivity_requested(cfg)) run_sensitivity_stage(cfg, rs, subset, tracker);
      if (friends_requested(cfg)) run_friends_stage(cfg, rs, subset, tracker);
    } else {
      rgmx::throw_error(rgmx::ErrorCategory::Internal, "unknown subcommand " + sub);
    }

    tracker.write_manifest(sub, cfg);
  } catch (...) {
    tracker.discard_all();
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduced Google matrix toolkit"};
  app.set_version_flag("--version", std::string("rgmx ") + kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  bool manifest_only = false;
  std::string config_path;

  // a config file supplies defaults; explicit flags win
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
  }
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: io: cannot open config file " << config_path << "\n";
      return 1;
    }
    try {
      cfg = RunConfig::from_json(json::parse(in));
    } catch (const rgmx::Error& e) {
      std::cerr << "error: " << rgmx::to_string(e.category()) << ": " << e.what() << "\n";
      return 1;
    } catch (const json::exception& e) {
      std::cerr << "error: parse: bad config file: " << e.what() << "\n";
      return 1;
    }
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override it)");
    sub->add_option("--graph", cfg.graph, "edge list: 'source<TAB>target' per line");
    sub->add_option("--labels", cfg.labels, "optional 'node_id<TAB>label' display names");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--alpha", cfg.alpha, "damping factor in (0,1)");
    sub->add_option("--tol", cfg.tol, "PageRank L1 convergence threshold");
    sub->add_option("--max-iters", cfg.max_iters, "PageRank iteration cap");
    sub->add_option("--threads", cfg.threads, "worker cap (0 = hardware)");
    sub->add_flag("--manifest-only", manifest_only, "print the planned manifest and write nothing");
  };
  auto add_subset = [&](CLI::App* sub) {
    sub->add_option("--subset", cfg.subset, "catalog: 'node_id<TAB>category<TAB>display name'");
  };
  auto add_reduced = [&](CLI::App* sub) {
    sub->add_option("--series-tol", cfg.series_tol, "hidden-link series tail threshold");
    sub->add_option("--max-series-terms", cfg.max_series_terms, "hidden-link series term cap");
  };

  auto* pr_cmd = app.add_subcommand("pagerank", "global PageRank and rank indices");
  add_common(pr_cmd);
  add_subset(pr_cmd);

  auto* red_cmd = app.add_subcommand("reduce", "reduced matrix and its components");
  add_common(red_cmd);
  add_subset(red_cmd);
  add_reduced(red_cmd);
  red_cmd->add_option("--heatmap-category", cfg.heatmap_category,
                      "also emit a long-form heat-map CSV for this category");

  auto* sens_cmd = app.add_subcommand("sensitivity", "PageRank sensitivity to link boosts");
  add_common(sens_cmd);
  add_subset(sens_cmd);
  add_reduced(sens_cmd);
  sens_cmd->add_option("--delta", cfg.delta, "relative link boost");
  sens_cmd->add_option("--source", cfg.source, "boosted link source (member name or node id)");
  sens_cmd->add_option("--target", cfg.target, "boosted link target");
  sens_cmd->add_flag("--influence-map", cfg.influence_map,
                     "countries x groups table of self-derivatives");
  sens_cmd->add_option("--country-link", cfg.country_link,
                       "groups x other-countries table for this country");
  sens_cmd->add_option("--country-category", cfg.country_category,
                       "category tag that marks countries");

  auto* fr_cmd = app.add_subcommand("friends", "iterated top-k friend networks");
  add_common(fr_cmd);
  add_subset(fr_cmd);
  add_reduced(fr_cmd);
  fr_cmd->add_option("--seeds", cfg.seeds, "comma-separated member names or node ids");
  fr_cmd->add_flag("--seed-top-per-category", cfg.seed_top_per_category,
                   "seed with the best-ranked member of each non-country category");
  fr_cmd->add_option("--k", cfg.k, "friends per expanded node");
  fr_cmd->add_option("--filter", cfg.filter, "restrict candidates to one category");
  fr_cmd->add_flag("--bipartite", cfg.bipartite, "use separate group/country quotas");
  fr_cmd->add_option("--k-groups", cfg.k_groups, "group quota (bipartite)");
  fr_cmd->add_option("--k-countries", cfg.k_countries, "country quota (bipartite)");
  fr_cmd->add_option("--country-category", cfg.country_category,
                     "category tag that marks countries");

  auto* pipe_cmd = app.add_subcommand("pipeline", "all stages in sequence, reusing intermediates");
  add_common(pipe_cmd);
  add_subset(pipe_cmd);
  add_reduced(pipe_cmd);
  pipe_cmd->add_option("--delta", cfg.delta, "relative link boost");
  pipe_cmd->add_option("--source", cfg.source, "sensitivity link source");
  pipe_cmd->add_option("--target", cfg.target, "sensitivity link target");
  pipe_cmd->add_flag("--influence-map", cfg.influence_map, "emit the influence map");
  pipe_cmd->add_option("--country-link", cfg.country_link, "emit the country-link table");
  pipe_cmd->add_option("--country-category", cfg.country_category, "country category tag");
  pipe_cmd->add_option("--heatmap-category", cfg.heatmap_category, "heat-map category");
  pipe_cmd->add_option("--seeds", cfg.seeds, "friend-network seeds");
  pipe_cmd->add_flag("--seed-top-per-category", cfg.seed_top_per_category,
                     "seed with the best-ranked member of each non-country category");
  pipe_cmd->add_option("--k", cfg.k, "friends per expanded node");
  pipe_cmd->add_option("--filter", cfg.filter, "friend candidate category filter");
  pipe_cmd->add_flag("--bipartite", cfg.bipartite, "bipartite friend quotas");
  pipe_cmd->add_option("--k-groups", cfg.k_groups, "group quota");
  pipe_cmd->add_option("--k-countries", cfg.k_countries, "country quota");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), cfg, manifest_only);
  } catch (const rgmx::Error& e) {
    std::cerr << "error: " << rgmx::to_string(e.category()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
