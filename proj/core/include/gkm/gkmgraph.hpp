#pragma once

// Labeled (GKM) graphs of root systems: vertices are Weyl group elements,
// edges join w and w*sigma_alpha and carry the label w(alpha).

#include <cstddef>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gkm/poly.hpp"
#include "gkm/weyl.hpp"

namespace gkm {

struct Edge {
  std::size_t a;
  std::size_t b;
  LinearForm label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class LabeledGraph {
 public:
  /// Validates a < b, nonzero labels of the right arity and no duplicate
  /// edges. Label signs are not normalized here; the builders do it.
  LabeledGraph(Family family, std::size_t rank, std::size_t n_vars, std::vector<std::string> names,
               std::vector<SignedPermutation> perms, std::vector<Edge> edges);

  Family family() const { return family_; }
  /// The rank parameter n of the family (number of one-line entries).
  std::size_t rank() const { return rank_; }
  std::size_t n_vars() const { return n_vars_; }
  std::size_t vertex_count() const { return names_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  /// True when every vertex is a signed permutation of rank() entries.
  bool has_permutation_vertices() const { return !perms_.empty() || names_.empty(); }
  const SignedPermutation& vertex(std::size_t i) const { return perms_.at(i); }
  const std::vector<SignedPermutation>& vertices() const { return perms_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// (neighbor, edge index) pairs.
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }

  std::optional<std::size_t> index_of(const SignedPermutation& w) const;
  std::optional<std::size_t> index_of_name(const std::string& name) const;
  std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const;

 private:
  Family family_;
  std::size_t rank_;
  std::size_t n_vars_;
  std::vector<std::string> names_;
  std::vector<SignedPermutation> perms_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
  std::map<std::string, std::size_t> by_name_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_pair_;
};

using GraphPtr = std::shared_ptr<const LabeledGraph>;

GraphPtr build_A(std::size_t n);
GraphPtr build_B(std::size_t n);
GraphPtr build_C(std::size_t n);
/// n >= 2; throws UsageError otherwise.
GraphPtr build_D(std::size_t n);
GraphPtr build_D_minus(std::size_t n);
/// Dispatch on family for the classical families.
GraphPtr build_graph(Family family, std::size_t n);

/// Like build_graph but also accepts the one-vertex ranks that appear as
/// restriction targets: rank 0 for A, B, C and rank 1 for D, Dminus.
GraphPtr build_graph_allow_degenerate(Family family, std::size_t n);

/// Graph of the reflection group generated by the roots. Throws
/// ResourceError past the group-size bound and UsageError when some w(alpha)
/// is not integral.
GraphPtr build_from_roots(const std::vector<LinearForm>& roots, std::size_t max_order = kMaxGroupOrder);

/// Parses "1,-1,0;0,1,-1" into root vectors.
std::vector<LinearForm> parse_roots(const std::string& text);

/// Same graph with every label negated (labels no longer sign-canonical).
GraphPtr negate_labels(const GraphPtr& g);
/// Same graph with the vertex list reordered to old[order[0]], old[order[1]], ...
GraphPtr permute_vertices(const GraphPtr& g, const std::vector<std::size_t>& order);

std::string to_dot(const LabeledGraph& g);
nlohmann::json to_json(const LabeledGraph& g);

}  // namespace gkm
