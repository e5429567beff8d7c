#include "rgmx/subset.hpp"

#include <charconv>
#include <fstream>

#include "rgmx/errors.hpp"

namespace rgmx {

SubsetSpec SubsetSpec::from_members(std::vector<SubsetMember> members, const DirectedGraph& graph) {
  if (members.empty()) throw_error(ErrorCategory::Validate, "empty subset");
  SubsetSpec spec;
  spec.node_to_index_.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& m = members[k];
    if (m.node >= graph.num_nodes())
      throw_error(ErrorCategory::Validate, "subset member node " + std::to_string(m.node) +
                                               " outside graph of " +
                                               std::to_string(graph.num_nodes()) + " nodes");
    auto [it, inserted] = spec.node_to_index_.emplace(m.node, k);
    if (!inserted)
      throw_error(ErrorCategory::Validate, "duplicate subset member node " + std::to_string(m.node) +
                                               " (positions " + std::to_string(it->second + 1) +
                                               " and " + std::to_string(k + 1) + ")");
  }
  spec.members_ = std::move(members);
  return spec;
}

std::optional<std::size_t> SubsetSpec::index_of_node(NodeId node) const {
  auto it = node_to_index_.find(node);
  if (it == node_to_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SubsetSpec::members_with_category(std::string_view category) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < members_.size(); ++k)
    if (members_[k].category == category) out.push_back(k);
  return out;
}

std::vector<std::string> SubsetSpec::categories() const {
  std::vector<std::string> out;
  for (const auto& m : members_)
    if (std::find(out.begin(), out.end(), m.category) == out.end()) out.push_back(m.category);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

SubsetSpec load_subset(const std::filesystem::path& path, const DirectedGraph& graph) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot open subset catalog: " + path.string());

  std::vector<SubsetMember> members;
  std::vector<std::uint64_t> member_lines;
  std::unordered_map<NodeId, std::uint64_t> first_line_of;

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;

    auto tab1 = sv.find('\t');
    auto tab2 = tab1 == std::string_view::npos ? std::string_view::npos : sv.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos)
      throw_error(ErrorCategory::Parse,
                  path.filename().string() + ":" + std::to_string(line_no) +
                      ": expected 'node_id<TAB>category<TAB>display name'");

    std::string_view id_tok = trim(sv.substr(0, tab1));
    std::uint64_t id = 0;
    auto [ptr, ec] = std::from_chars(id_tok.data(), id_tok.data() + id_tok.size(), id);
    if (ec != std::errc{} || ptr != id_tok.data() + id_tok.size())
      throw_error(ErrorCategory::Parse, path.filename().string() + ":" + std::to_string(line_no) +
                                            ": bad node id '" + std::string(id_tok) + "'");
    if (id >= graph.num_nodes())
      throw_error(ErrorCategory::Validate, path.filename().string() + ":" + std::to_string(line_no) +
                                               ": node id " + std::to_string(id) +
                                               " outside graph of " +
                                               std::to_string(graph.num_nodes()) + " nodes");

    NodeId node = static_cast<NodeId>(id);
    if (auto it = first_line_of.find(node); it != first_line_of.end())
      throw_error(ErrorCategory::Validate, path.filename().string() + ": duplicate member node " +
                                               std::to_string(node) + " on lines " +
                                               std::to_string(it->second) + " and " +
                                               std::to_string(line_no));
    first_line_of.emplace(node, line_no);

    SubsetMember m;
    m.node = node;
    m.category = std::string(trim(sv.substr(tab1 + 1, tab2 - tab1 - 1)));
    m.display_name = std::string(trim(sv.substr(tab2 + 1)));
    if (m.category.empty())
      throw_error(ErrorCategory::Parse, path.filename().string() + ":" + std::to_string(line_no) +
                                            ": empty category");
    if (m.display_name.empty()) m.display_name = std::to_string(node);
    members.push_back(std::move(m));
    member_lines.push_back(line_no);
  }
  if (members.empty()) throw_error(ErrorCategory::Validate, "empty subset catalog: " + path.string());
  return SubsetSpec::from_members(std::move(members), graph);
}

}  // namespace rgmx
