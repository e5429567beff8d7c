#include "rgmx/exports.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>

#include <openssl/evp.h>

#include <json.hpp>

#include "rgmx/errors.hpp"

namespace rgmx {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(ErrorCategory::Io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw_error(ErrorCategory::Io, "write failed: " + path.string());
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Member indices ordered by ascending local rank.
std::vector<std::size_t> rank_order(const ReducedSet& rs, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> order(members);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rs.local_rank[a] < rs.local_rank[b]; });
  return order;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw_error(ErrorCategory::Internal, "double formatting failed");
  return std::string(buf, ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string category_color(std::string_view category) {
  struct Entry {
    std::string_view tag;
    std::string_view color;
  };
  // palette used by the bundled catalogs: C1..C6 category codes and the
  // equivalent two-letter color codes, plus cyan for countries
  static constexpr Entry known[] = {
      {"C1", "#3531FF"}, {"BL", "#3531FF"}, {"C2", "#FE0000"}, {"RD", "#FE0000"},
      {"C3", "#F56B00"}, {"OR", "#F56B00"}, {"C4", "#009901"}, {"GN", "#009901"},
      {"C5", "#FF00FF"}, {"PK", "#FF00FF"}, {"C6", "#000000"}, {"BK", "#000000"},
      {"country", "#00FFFF"},
  };
  for (const auto& e : known)
    if (e.tag == category) return std::string(e.color);
  static constexpr std::string_view fallback[] = {
      "#1B9E77", "#D95F02", "#7570B3", "#E7298A", "#66A61E", "#E6AB02",
      "#A6761D", "#666666", "#8DD3C7", "#BC80BD", "#FB8072", "#80B1D3",
  };
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (char c : category) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return std::string(fallback[h % std::size(fallback)]);
}

void write_pagerank_csv(const std::filesystem::path& path, const PageRankResult& pr) {
  const std::size_t n = pr.p.size();
  std::vector<std::uint64_t> rank_of(n);
  for (std::size_t k = 0; k < n; ++k) rank_of[pr.rank[k]] = k + 1;
  auto out = open_out(path);
  out << "node_id,probability,global_rank\n";
  for (std::size_t v = 0; v < n; ++v)
    out << v << "," << format_double(pr.p[v]) << "," << rank_of[v] << "\n";
  finish(out, path);
}

void write_pagerank_summary_json(const std::filesystem::path& path, const GoogleParams& params,
                                 const PageRankResult& pr) {
  nlohmann::json j{{"alpha", params.alpha},
                   {"tol", params.tol},
                   {"iterations", pr.iterations},
                   {"residual", pr.residual},
                   {"nodes", pr.p.size()}};
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  finish(out, path);
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      const SubsetSpec& subset) {
  auto out = open_out(path);
  out << "";
  for (std::size_t j = 0; j < subset.size(); ++j)
    out << "," << csv_field(subset.member(j).display_name);
  out << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << csv_field(subset.member(static_cast<std::size_t>(i)).display_name);
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << "," << format_double(m(i, j));
    out << "\n";
  }
  finish(out, path);
}

void write_reduced_sidecar_json(const std::filesystem::path& path, const ReducedSet& rs) {
  nlohmann::json j;
  if (rs.lambda_c)
    j["lambda_c"] = *rs.lambda_c;
  else
    j["lambda_c"] = nullptr;
  j["weights"] = {{"wrr", rs.weights.wrr}, {"wpr", rs.weights.wpr}, {"wqr", rs.weights.wqr}};
  j["series_terms"] = rs.series_terms;
  j["truncation_error"] = rs.truncation_error;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  finish(out, path);
}

void write_heatmap_csv(const std::filesystem::path& path, const ReducedSet& rs,
                       const SubsetSpec& subset, std::string_view category) {
  std::vector<std::size_t> members;
  if (category.empty()) {
    members.resize(subset.size());
    std::iota(members.begin(), members.end(), std::size_t{0});
  } else {
    members = subset.members_with_category(category);
  }
  const auto order = rank_order(rs, members);

  struct Component {
    std::string_view name;
    const Eigen::MatrixXd& m;
  };
  const Component components[] = {
      {"gr", rs.gr}, {"grr", rs.grr}, {"gpr", rs.gpr}, {"gqrd", rs.gqrd}, {"gqrnd", rs.gqrnd}};

  auto out = open_out(path);
  out << "row_member,col_member,component,value\n";
  for (const auto& comp : components)
    for (std::size_t i : order)
      for (std::size_t j : order)
        out << csv_field(subset.member(i).display_name) << ","
            << csv_field(subset.member(j).display_name) << "," << comp.name << ","
            << format_double(comp.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
            << "\n";
  finish(out, path);
}

void write_local_rank_csv(const std::filesystem::path& path,
                          const std::vector<LocalRankEntry>& entries, const SubsetSpec& subset) {
  auto out = open_out(path);
  out << "local_rank,node_id,display_name,category,probability\n";
  for (const auto& e : entries)
    out << e.local_rank << "," << e.node << ","
        << csv_field(subset.member(e.member_index).display_name) << ","
        << csv_field(subset.member(e.member_index).category) << ","
        << format_double(e.probability) << "\n";
  finish(out, path);
}

void write_influence_csv(const std::filesystem::path& path, const InfluenceTable& table,
                         const SubsetSpec& subset) {
  auto out = open_out(path);
  out << "row_label,col_label,value\n";
  for (std::size_t r = 0; r < table.row_members.size(); ++r)
    for (std::size_t c = 0; c < table.col_members.size(); ++c)
      out << csv_field(subset.member(table.row_members[r]).display_name) << ","
          << csv_field(subset.member(table.col_members[c]).display_name) << ","
          << format_double(table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)))
          << "\n";
  finish(out, path);
}

void write_influence_json(const std::filesystem::path& path, const InfluenceTable& table,
                          std::string_view mode) {
  nlohmann::json j{{"mode", std::string(mode)},
                   {"delta", table.delta},
                   {"value_min", table.value_min},
                   {"value_max", table.value_max},
                   {"rows", table.row_members.size()},
                   {"cols", table.col_members.size()}};
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  finish(out, path);
}

void write_sensitivity_csv(const std::filesystem::path& path, const SensitivityReport& report,
                           const SubsetSpec& subset) {
  const std::string link = subset.member(report.perturbation.source).display_name + "->" +
                           subset.member(report.perturbation.target).display_name;
  auto out = open_out(path);
  out << "row_label,col_label,value\n";
  for (std::size_t k = 0; k < report.d.size(); ++k)
    out << csv_field(subset.member(k).display_name) << "," << csv_field(link) << ","
        << format_double(report.d[k]) << "\n";
  finish(out, path);
}

void write_sensitivity_json(const std::filesystem::path& path, const SensitivityReport& report) {
  const auto [mn, mx] = std::minmax_element(report.d.begin(), report.d.end());
  nlohmann::json j{{"mode", "single_link"},
                   {"delta", report.perturbation.delta},
                   {"source", report.perturbation.source},
                   {"target", report.perturbation.target},
                   {"value_min", report.d.empty() ? 0.0 : *mn},
                   {"value_max", report.d.empty() ? 0.0 : *mx}};
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  finish(out, path);
}

void write_gexf(const std::filesystem::path& path, const FriendNetwork& net,
                const SubsetSpec& subset, const ReducedSet& rs) {
  auto out = open_out(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" "
         "xmlns:viz=\"http://www.gexf.net/1.2draft/viz\" version=\"1.2\">\n"
      << "  <graph defaultedgetype=\"directed\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"0\" title=\"category\" type=\"string\"/>\n"
      << "      <attribute id=\"1\" title=\"color\" type=\"string\"/>\n"
      << "      <attribute id=\"2\" title=\"pagerank\" type=\"double\"/>\n"
      << "      <attribute id=\"3\" title=\"seed\" type=\"boolean\"/>\n"
      << "      <attribute id=\"4\" title=\"generation\" type=\"integer\"/>\n"
      << "    </attributes>\n"
      << "    <attributes class=\"edge\">\n"
      << "      <attribute id=\"5\" title=\"weight\" type=\"double\"/>\n"
      << "      <attribute id=\"6\" title=\"generation\" type=\"integer\"/>\n"
      << "    </attributes>\n"
      << "    <nodes>\n";
  for (const auto& node : net.nodes) {
    const auto& m = subset.member(node.member);
    const std::string color = category_color(m.category);
    const double p = rs.pr_reduced[static_cast<Eigen::Index>(node.member)];
    const auto r = std::stoi(color.substr(1, 2), nullptr, 16);
    const auto g = std::stoi(color.substr(3, 2), nullptr, 16);
    const auto b = std::stoi(color.substr(5, 2), nullptr, 16);
    out << "      <node id=\"" << node.member << "\" label=\"" << xml_escape(m.display_name)
        << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"0\" value=\"" << xml_escape(m.category) << "\"/>\n"
        << "          <attvalue for=\"1\" value=\"" << color << "\"/>\n"
        << "          <attvalue for=\"2\" value=\"" << format_double(p) << "\"/>\n"
        << "          <attvalue for=\"3\" value=\"" << (node.seed ? "true" : "false") << "\"/>\n"
        << "          <attvalue for=\"4\" value=\"" << node.generation << "\"/>\n"
        << "        </attvalues>\n"
        << "        <viz:color r=\"" << r << "\" g=\"" << g << "\" b=\"" << b << "\"/>\n"
        << "        <viz:size value=\"" << format_double(p) << "\"/>\n"
        << "      </node>\n";
  }
  out << "    </nodes>\n    <edges>\n";
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const auto& edge = net.edges[e];
    out << "      <edge id=\"" << e << "\" source=\"" << edge.from << "\" target=\"" << edge.to
        << "\" weight=\"" << format_double(edge.weight) << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"5\" value=\"" << format_double(edge.weight) << "\"/>\n"
        << "          <attvalue for=\"6\" value=\"" << edge.generation << "\"/>\n"
        << "        </attvalues>\n"
        << "      </edge>\n";
  }
  out << "    </edges>\n  </graph>\n</gexf>\n";
  finish(out, path);
}

void write_dot(const std::filesystem::path& path, const FriendNetwork& net,
               const SubsetSpec& subset, const ReducedSet& rs) {
  auto out = open_out(path);
  out << "digraph friends {\n  node [style=filled];\n";
  for (const auto& node : net.nodes) {
    const auto& m = subset.member(node.member);
    const double p = rs.pr_reduced[static_cast<Eigen::Index>(node.member)];
    out << "  n" << node.member << " [label=\"" << dot_escape(m.display_name)
        << "\", fillcolor=\"" << category_color(m.category) << "\", category=\""
        << dot_escape(m.category) << "\", pagerank=\"" << format_double(p) << "\", seed=\""
        << (node.seed ? "true" : "false") << "\", generation=\"" << node.generation << "\"];\n";
  }
  for (const auto& edge : net.edges)
    out << "  n" << edge.from << " -> n" << edge.to << " [weight=\"" << format_double(edge.weight)
        << "\", generation=\"" << edge.generation << "\"];\n";
  out << "}\n";
  finish(out, path);
}

void write_friend_edges_csv(const std::filesystem::path& path, const FriendNetwork& net,
                            const SubsetSpec& subset) {
  auto out = open_out(path);
  out << "from,to,weight,generation\n";
  for (const auto& edge : net.edges)
    out << csv_field(subset.member(edge.from).display_name) << ","
        << csv_field(subset.member(edge.to).display_name) << "," << format_double(edge.weight)
        << "," << edge.generation << "\n";
  finish(out, path);
}

namespace {

std::string digest_hex(EVP_MD_CTX* ctx) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCategory::Io, "cannot hash " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  std::string out = digest_hex(ctx);
  EVP_MD_CTX_free(ctx);
  return out;
}

std::string sha256_string(std::string_view data) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  std::string out = digest_hex(ctx);
  EVP_MD_CTX_free(ctx);
  return out;
}

}  // namespace rgmx
