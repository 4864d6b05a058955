#pragma once

#include <utility>
#include <vector>

#include "dcr/network.hpp"

namespace dcr {

/// The three classical sufficient tests for link irrelevance, from weakest to
/// strongest. For a link {x,y}, each compares two pairing sums against the
/// diameter:
///   kInGraph        d_G(s,x) + d_G(y,t)
///   kWithoutLink    d_{G-e}(s,x) + d_{G-e}(y,t)
///   kVertexDeleted  d_{G-y-t}(s,x) + d_{G-s-x}(y,t)
/// together with the pairing that swaps x and y.
enum class SufficientCondition { kInGraph = 1, kWithoutLink = 2, kVertexDeleted = 3 };

struct IrrelevanceReport {
  LinkId link_id = 0;
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool exact_irrelevant = false;
  /// Smallest diameter at which the link is relevant; nullopt if never.
  Hops relevance_threshold;
};

/// The two pairing sums of a sufficient condition; nullopt means infinite.
std::pair<Hops, Hops> condition_sums(const Network& net, LinkId link_id,
                                     SufficientCondition level);

/// True iff both pairing sums are >= d (an infinite sum always qualifies).
bool sufficient_condition(const Network& net, LinkId link_id,
                          SufficientCondition level);

/// Exact test: the link is relevant iff the shortest node-disjoint pair from
/// its endpoints to the terminals has length sum <= d-1.
bool exact_irrelevant(const Network& net, LinkId link_id);

/// min_disjoint_pair(...).length_sum + 1, or nullopt.
Hops relevance_threshold(const Network& net, LinkId link_id);

IrrelevanceReport assess_link(const Network& net, LinkId link_id);

/// One report per link in id order, all against the same snapshot.
std::vector<IrrelevanceReport> sweep(const Network& net);

/// Ids of the links the exact test marks irrelevant.
std::vector<LinkId> irrelevant_links(const Network& net);

}  // namespace dcr
