#pragma once

#include "kohmoto/farey.hpp"

#include <string>
#include <vector>

namespace kohmoto {

/// Node of the interval-Farey tree, generated on demand.
struct TreeNode {
    enum class Kind { Root, Interval, Singleton };
    Kind kind = Kind::Root;
    FareyNeighborPair pair;  // Interval
    Rational point;          // Singleton
    long level = 0;
    long singleton_depth = 0;

    static TreeNode root() { return {}; }
    /// Whether x lies in this node's label: [0,1], the open interval, or {point}.
    bool contains(const FareyPoint& x) const;
    std::string label() const;

    friend bool operator==(const TreeNode& a, const TreeNode& b);
};

std::vector<TreeNode> children(const TreeNode& node);
/// Root -> 1; Interval -> 1/(q+q'); Singleton {s} of depth d -> 1/(q_s 2^d).
/// (The weight of the parent interval of a singleton {s} is exactly 1/q_s.)
Rational weight(const TreeNode& node);

/// Finite prefix of a boundary path plus the rule generating the rest of it.
class BoundaryPath {
public:
    enum class Rule { Toward, SingletonForever, AlwaysLeft, AlwaysRight };

    BoundaryPath(std::vector<TreeNode> prefix, Rule rule);
    BoundaryPath(std::vector<TreeNode> prefix, const FareyPoint& target);

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    long depth() const { return static_cast<long>(nodes_.size()) - 1; }
    Rule rule() const { return rule_; }
    const std::optional<FareyPoint>& target() const { return target_; }
    /// Materialize further nodes until depth() >= d.
    BoundaryPath extended(long d) const;
    TreeNode next() const;

private:
    std::vector<TreeNode> nodes_;
    Rule rule_;
    std::optional<FareyPoint> target_;
    void validate() const;
};

/// Prefix of the unique path whose labels all contain x, nodes for levels 0..depth.
BoundaryPath path_of(const FareyPoint& x, long depth);
FareyPoint represent(const BoundaryPath& path);
/// Weight of the meet node; 0 for equal paths.  Throws if the prefixes never split.
Rational boundary_distance(const BoundaryPath& a, const BoundaryPath& b);

}  // namespace kohmoto
