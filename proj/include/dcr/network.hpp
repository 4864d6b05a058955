#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcr {

using NodeId = int;
using LinkId = int;

/// Hop count, or std::nullopt when the target cannot be reached.
using Hops = std::optional<int>;

struct Link {
  LinkId id = 0;
  NodeId u = 0;
  NodeId v = 0;
  double reliability = 0.0;

  /// A link is perfect exactly when its reliability is pinned to 1.
  bool perfect() const { return reliability == 1.0; }
  bool self_loop() const { return u == v; }
  bool touches(NodeId n) const { return u == n || v == n; }
  /// The endpoint across from `n`; `n` must be an endpoint.
  NodeId other(NodeId n) const { return u == n ? v : u; }
};

/// Raised for malformed network text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Two-terminal network with independently failing links and a hop budget.
///
/// Values are immutable: every edit returns a new Network. Links are kept
/// sorted by id and ids are never renumbered, so ids seen in traces and
/// reports stay meaningful across edits.
class Network {
 public:
  /// Throws std::invalid_argument if the terminals coincide, an endpoint is
  /// not a node, an id repeats, a reliability lies outside [0,1], or the
  /// diameter is negative.
  Network(std::set<NodeId> nodes, std::vector<Link> links, NodeId source,
          NodeId terminal, int diameter);

  const std::set<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  NodeId source() const { return source_; }
  NodeId terminal() const { return terminal_; }
  int diameter() const { return diameter_; }

  bool has_node(NodeId n) const { return nodes_.count(n) != 0; }
  bool is_terminal(NodeId n) const { return n == source_ || n == terminal_; }
  /// Throws std::out_of_range for an unknown id.
  const Link& link(LinkId id) const;
  const Link* find_link(LinkId id) const;
  /// Incident link ends; a self-loop counts twice.
  int degree(NodeId n) const;
  std::size_t non_perfect_count() const;
  NodeId max_node() const { return nodes_.empty() ? -1 : *nodes_.rbegin(); }

  Network with_diameter(int d) const;
  Network with_terminals(NodeId source, NodeId terminal) const;
  /// Replaces the link with the same id.
  Network with_link(const Link& link) const;
  /// Removes links and then nodes; terminals cannot be removed.
  Network without(const std::vector<LinkId>& links,
                  const std::vector<NodeId>& nodes) const;
  /// Drops non-terminal nodes with no incident link.
  Network without_isolated() const;
  std::vector<NodeId> isolated_nodes() const;

  friend bool operator==(const Network& a, const Network& b);

 private:
  std::set<NodeId> nodes_;
  std::vector<Link> links_;
  NodeId source_;
  NodeId terminal_;
  int diameter_;
};

bool operator==(const Link& a, const Link& b);

/// One up/down assignment to every link of a network, keyed by link id.
struct SystemState {
  std::map<LinkId, bool> up;

  static SystemState all(const Network& net, bool value);
};

/// Structure function: true iff the up links hold a source-terminal path of
/// at most `net.diameter()` hops. Throws std::invalid_argument if the state
/// does not cover exactly the network's links.
bool phi(const Network& net, const SystemState& state);

/// Breadth-first hop distance over all links, skipping the `forbidden`
/// nodes. If `a` or `b` is itself forbidden the distance is unreachable.
Hops hop_distance(const Network& net, NodeId a, NodeId b,
                  const std::set<NodeId>& forbidden = {});

/// Same, with one link removed from consideration.
Hops hop_distance_without(const Network& net, LinkId skipped, NodeId a,
                          NodeId b);

/// Removes a link; isolated nodes are left in place. Throws
/// std::out_of_range for an unknown id.
Network delete_link(const Network& net, LinkId id);

/// Pins a link's reliability to 1. Throws std::out_of_range for an unknown id.
Network make_perfect(const Network& net, LinkId id);

/// Reads the line-oriented network format:
///
///     n <node-count>        optional; otherwise nodes come from s/t/e lines
///     d <diameter>          optional
///     s <node>
///     t <node>
///     e <id> <u> <v> <p>
///
/// '#' starts a comment. `diameter_override` replaces the `d` line; having
/// neither is an error. Errors throw ParseError naming the offending line.
Network parse_network(std::istream& in,
                      std::optional<int> diameter_override = std::nullopt);
Network parse_network(const std::string& text,
                      std::optional<int> diameter_override = std::nullopt);

/// Writes the network format with 17 significant digits per reliability.
/// The `n` line is omitted, so nodes are implied by terminals and links.
std::string serialize(const Network& net);

}  // namespace dcr
