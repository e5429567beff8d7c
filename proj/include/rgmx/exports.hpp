#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "rgmx/netstruct.hpp"
#include "rgmx/pagerank.hpp"
#include "rgmx/reduced.hpp"
#include "rgmx/sensitivity.hpp"
#include "rgmx/subset.hpp"

namespace rgmx {

/// Shortest decimal form that round-trips the exact double (keeps CSV
/// artifacts diff-able and byte-stable).
std::string format_double(double value);

/// CSV field quoting per RFC 4180 (only when the field needs it).
std::string csv_field(std::string_view field);

/// Hex color for a category tag. Knows the C1..C6 / BL RD OR GN PK BK codes
/// and "country"; anything else hashes into a fixed palette.
std::string category_color(std::string_view category);

void write_pagerank_csv(const std::filesystem::path& path, const PageRankResult& pr);
void write_pagerank_summary_json(const std::filesystem::path& path, const GoogleParams& params,
                                 const PageRankResult& pr);

/// One component matrix with a header row/column of member display names.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      const SubsetSpec& subset);

void write_reduced_sidecar_json(const std::filesystem::path& path, const ReducedSet& rs);

/// Long-form "row_member,col_member,component,value" restricted to one
/// category, both axes ordered by local rank (top-ranked first).
void write_heatmap_csv(const std::filesystem::path& path, const ReducedSet& rs,
                       const SubsetSpec& subset, std::string_view category);

void write_local_rank_csv(const std::filesystem::path& path,
                          const std::vector<LocalRankEntry>& entries, const SubsetSpec& subset);

/// "row_label,col_label,value" long form for a batch table.
void write_influence_csv(const std::filesystem::path& path, const InfluenceTable& table,
                         const SubsetSpec& subset);
void write_influence_json(const std::filesystem::path& path, const InfluenceTable& table,
                          std::string_view mode);

/// Per-member derivative column of one single-link run.
void write_sensitivity_csv(const std::filesystem::path& path, const SensitivityReport& report,
                           const SubsetSpec& subset);
void write_sensitivity_json(const std::filesystem::path& path, const SensitivityReport& report);

void write_gexf(const std::filesystem::path& path, const FriendNetwork& net,
                const SubsetSpec& subset, const ReducedSet& rs);
void write_dot(const std::filesystem::path& path, const FriendNetwork& net,
               const SubsetSpec& subset, const ReducedSet& rs);
void write_friend_edges_csv(const std::filesystem::path& path, const FriendNetwork& net,
                            const SubsetSpec& subset);

/// SHA-256 of a file's content, lowercase hex. Used for artifact manifests.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_string(std::string_view data);

}  // namespace rgmx
