#include "dcr/network.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "adjacency.hpp"

namespace dcr {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

Network::Network(std::set<NodeId> nodes, std::vector<Link> links,
                 NodeId source, NodeId terminal, int diameter)
    : nodes_(std::move(nodes)),
      links_(std::move(links)),
      source_(source),
      terminal_(terminal),
      diameter_(diameter) {
  if (source_ == terminal_)
    throw std::invalid_argument("source and terminal must differ");
  if (!has_node(source_) || !has_node(terminal_))
    throw std::invalid_argument("terminal is not a node of the network");
  if (diameter_ < 0) throw std::invalid_argument("diameter must be >= 0");
  if (!nodes_.empty() && *nodes_.begin() < 0)
    throw std::invalid_argument("node ids must be non-negative");
  std::sort(links_.begin(), links_.end(),
            [](const Link& a, const Link& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (l.id < 0) throw std::invalid_argument("link ids must be non-negative");
    if (i > 0 && links_[i - 1].id == l.id)
      throw std::invalid_argument(fmt::format("duplicate link id {}", l.id));
    if (!has_node(l.u) || !has_node(l.v))
      throw std::invalid_argument(
          fmt::format("link {} has an endpoint outside the node set", l.id));
    if (!(l.reliability >= 0.0 && l.reliability <= 1.0))
      throw std::invalid_argument(
          fmt::format("link {} reliability outside [0,1]", l.id));
  }
}

const Link* Network::find_link(LinkId id) const {
  auto it = std::lower_bound(links_.begin(), links_.end(), id,
                             [](const Link& l, LinkId v) { return l.id < v; });
  return (it != links_.end() && it->id == id) ? &*it : nullptr;
}

const Link& Network::link(LinkId id) const {
  const Link* l = find_link(id);
  if (l == nullptr) throw std::out_of_range(fmt::format("unknown link id {}", id));
  return *l;
}

int Network::degree(NodeId n) const {
  int d = 0;
  for (const Link& l : links_) d += (l.u == n) + (l.v == n);
  return d;
}

std::size_t Network::non_perfect_count() const {
  return std::count_if(links_.begin(), links_.end(),
                       [](const Link& l) { return !l.perfect(); });
}

Network Network::with_diameter(int d) const {
  Network copy = *this;
  if (d < 0) throw std::invalid_argument("diameter must be >= 0");
  copy.diameter_ = d;
  return copy;
}

Network Network::with_terminals(NodeId source, NodeId terminal) const {
  return Network(nodes_, links_, source, terminal, diameter_);
}

Network Network::with_link(const Link& link) const {
  Network copy = *this;
  auto it = std::find_if(copy.links_.begin(), copy.links_.end(),
                         [&](const Link& l) { return l.id == link.id; });
  if (it == copy.links_.end())
    throw std::out_of_range(fmt::format("unknown link id {}", link.id));
  if (!has_node(link.u) || !has_node(link.v))
    throw std::invalid_argument("endpoint outside the node set");
  if (!(link.reliability >= 0.0 && link.reliability <= 1.0))
    throw std::invalid_argument("reliability outside [0,1]");
  *it = link;
  return copy;
}

Network Network::without(const std::vector<LinkId>& links,
                         const std::vector<NodeId>& nodes) const {
  Network copy = *this;
  for (LinkId id : links) {
    auto it = std::find_if(copy.links_.begin(), copy.links_.end(),
                           [&](const Link& l) { return l.id == id; });
    if (it == copy.links_.end())
      throw std::out_of_range(fmt::format("unknown link id {}", id));
    copy.links_.erase(it);
  }
  for (NodeId n : nodes) {
    if (is_terminal(n)) throw std::invalid_argument("cannot remove a terminal");
    if (copy.degree(n) != 0)
      throw std::invalid_argument(
          fmt::format("node {} still has incident links", n));
    copy.nodes_.erase(n);
  }
  return copy;
}

std::vector<NodeId> Network::isolated_nodes() const {
  std::vector<char> used(max_node() + 1, 0);
  for (const Link& l : links_) used[l.u] = used[l.v] = 1;
  std::vector<NodeId> out;
  for (NodeId n : nodes_)
    if (!used[n] && !is_terminal(n)) out.push_back(n);
  return out;
}

Network Network::without_isolated() const { return without({}, isolated_nodes()); }

bool operator==(const Link& a, const Link& b) {
  return a.id == b.id && a.u == b.u && a.v == b.v &&
         a.reliability == b.reliability;
}

bool operator==(const Network& a, const Network& b) {
  return a.nodes_ == b.nodes_ && a.links_ == b.links_ &&
         a.source_ == b.source_ && a.terminal_ == b.terminal_ &&
         a.diameter_ == b.diameter_;
}

SystemState SystemState::all(const Network& net, bool value) {
  SystemState s;
  for (const Link& l : net.links()) s.up.emplace(l.id, value);
  return s;
}

bool phi(const Network& net, const SystemState& state) {
  const auto& links = net.links();
  if (state.up.size() != links.size())
    throw std::invalid_argument("state does not cover the network's links");
  std::vector<char> up(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    auto it = state.up.find(links[i].id);
    if (it == state.up.end())
      throw std::invalid_argument("state does not cover the network's links");
    up[i] = it->second;
  }
  detail::Adjacency adj(net);
  auto dist = detail::bfs(adj, net.source(), {},
                          [&](std::size_t i) { return up[i] != 0; },
                          net.diameter());
  return dist[net.terminal()] <= net.diameter();
}

Hops hop_distance(const Network& net, NodeId a, NodeId b,
                  const std::set<NodeId>& forbidden) {
  if (forbidden.count(a) || forbidden.count(b)) return std::nullopt;
  if (!net.has_node(a) || !net.has_node(b)) return std::nullopt;
  if (a == b) return 0;
  detail::Adjacency adj(net);
  std::vector<char> blocked(adj.arcs.size(), 0);
  for (NodeId n : forbidden)
    if (n >= 0 && static_cast<std::size_t>(n) < blocked.size()) blocked[n] = 1;
  auto dist = detail::bfs(adj, a, blocked, [](std::size_t) { return true; });
  return detail::to_hops(dist[b]);
}

Hops hop_distance_without(const Network& net, LinkId skipped, NodeId a,
                          NodeId b) {
  return hop_distance(delete_link(net, skipped), a, b);
}

Network delete_link(const Network& net, LinkId id) { return net.without({id}, {}); }

Network make_perfect(const Network& net, LinkId id) {
  Link l = net.link(id);
  l.reliability = 1.0;
  return net.with_link(l);
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, fmt::format("expected {} but found '{}'", what, tok));
  return value;
}

NodeId node_id(std::string_view tok, std::size_t line) {
  auto n = number<long long>(tok, line, "a node id");
  if (n < 0 || n > std::numeric_limits<NodeId>::max())
    throw ParseError(line, fmt::format("node id '{}' out of range", tok));
  return static_cast<NodeId>(n);
}

}  // namespace

Network parse_network(std::istream& in, std::optional<int> diameter_override) {
  std::optional<int> node_count, diameter;
  std::optional<NodeId> source, terminal;
  std::size_t source_line = 0, terminal_line = 0;
  std::vector<std::pair<Link, std::size_t>> links;
  std::set<LinkId> ids;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    auto expect = [&](std::size_t count) {
      if (tok.size() != count)
        throw ParseError(line_no, fmt::format("'{}' line takes {} field(s)",
                                              tok[0], count - 1));
    };
    auto once = [&](bool seen) {
      if (seen) throw ParseError(line_no, fmt::format("repeated '{}' line", tok[0]));
    };
    if (tok[0] == "n") {
      expect(2);
      once(node_count.has_value());
      node_count = number<int>(tok[1], line_no, "a node count");
      if (*node_count < 0) throw ParseError(line_no, "negative node count");
    } else if (tok[0] == "d") {
      expect(2);
      once(diameter.has_value());
      diameter = number<int>(tok[1], line_no, "a diameter");
      if (*diameter < 0) throw ParseError(line_no, "negative diameter");
    } else if (tok[0] == "s") {
      expect(2);
      once(source.has_value());
      source = node_id(tok[1], line_no);
      source_line = line_no;
    } else if (tok[0] == "t") {
      expect(2);
      once(terminal.has_value());
      terminal = node_id(tok[1], line_no);
      terminal_line = line_no;
    } else if (tok[0] == "e") {
      expect(5);
      Link l;
      auto id = number<long long>(tok[1], line_no, "a link id");
      if (id < 0 || id > std::numeric_limits<LinkId>::max())
        throw ParseError(line_no, fmt::format("link id '{}' out of range", tok[1]));
      l.id = static_cast<LinkId>(id);
      l.u = node_id(tok[2], line_no);
      l.v = node_id(tok[3], line_no);
      l.reliability = number<double>(tok[4], line_no, "a reliability");
      if (!(l.reliability >= 0.0 && l.reliability <= 1.0))
        throw ParseError(line_no, fmt::format("reliability {} out of range [0,1]", tok[4]));
      if (!ids.insert(l.id).second)
        throw ParseError(line_no, fmt::format("duplicate link id {}", l.id));
      links.emplace_back(l, line_no);
    } else {
      throw ParseError(line_no, fmt::format("unknown record '{}'", tok[0]));
    }
  }

  const std::size_t end_line = line_no + 1;
  if (!source) throw ParseError(end_line, "missing 's' line");
  if (!terminal) throw ParseError(end_line, "missing 't' line");
  if (*source == *terminal)
    throw ParseError(terminal_line, "source and terminal must differ");
  if (diameter_override) diameter = diameter_override;
  if (!diameter) throw ParseError(end_line, "no diameter: add a 'd' line or pass one explicitly");
  if (*diameter < 0) throw ParseError(end_line, "negative diameter");

  std::set<NodeId> nodes;
  auto check = [&](NodeId n, std::size_t at) {
    if (node_count && n >= *node_count)
      throw ParseError(at, fmt::format("unknown node {} (n = {})", n, *node_count));
    nodes.insert(n);
  };
  if (node_count)
    for (NodeId n = 0; n < *node_count; ++n) nodes.insert(n);
  check(*source, source_line);
  check(*terminal, terminal_line);
  std::vector<Link> plain;
  for (auto& [l, at] : links) {
    check(l.u, at);
    check(l.v, at);
    plain.push_back(l);
  }
  return Network(std::move(nodes), std::move(plain), *source, *terminal, *diameter);
}

Network parse_network(const std::string& text, std::optional<int> diameter_override) {
  std::istringstream in(text);
  return parse_network(in, diameter_override);
}

std::string serialize(const Network& net) {
  std::string out = fmt::format("d {}\ns {}\nt {}\n", net.diameter(),
                                net.source(), net.terminal());
  for (const Link& l : net.links())
    out += fmt::format("e {} {} {} {:.17g}\n", l.id, l.u, l.v, l.reliability);
  return out;
}

}  // namespace dcr
