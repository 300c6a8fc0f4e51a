#include "kohmoto/tree.hpp"

#include "kohmoto/errors.hpp"

namespace kohmoto {

bool operator==(const TreeNode& a, const TreeNode& b) {
    if (a.kind != b.kind || a.level != b.level || a.singleton_depth != b.singleton_depth) return false;
    switch (a.kind) {
        case TreeNode::Kind::Root: return true;
        case TreeNode::Kind::Interval: return a.pair.lower == b.pair.lower && a.pair.upper == b.pair.upper;
        default: return a.point == b.point;
    }
}

bool TreeNode::contains(const FareyPoint& x) const {
    switch (kind) {
        case Kind::Root: return true;
        case Kind::Interval: return FareyPoint::exact(pair.lower) < x && x < FareyPoint::exact(pair.upper);
        default: return x == FareyPoint::exact(point);
    }
}

std::string TreeNode::label() const {
    switch (kind) {
        case Kind::Root: return "[0,1]";
        case Kind::Interval: return "(" + pair.lower.str() + "," + pair.upper.str() + ")";
        default: return "{" + point.str() + "}";
    }
}

namespace {

TreeNode interval(const Rational& a, const Rational& b, long level) {
    TreeNode n;
    n.kind = TreeNode::Kind::Interval;
    n.pair = {a, b, std::max(a.den(), b.den()).get_si()};
    n.level = level;
    return n;
}

TreeNode singleton(const Rational& s, long level, long depth) {
    TreeNode n;
    n.kind = TreeNode::Kind::Singleton;
    n.point = s;
    n.level = level;
    n.singleton_depth = depth;
    return n;
}

// the child of `node` whose label contains x
TreeNode step_toward(const TreeNode& node, const FareyPoint& x) {
    for (auto& c : children(node))
        if (c.contains(x)) return c;
    throw PreconditionError("point " + x.str() + " is not in label " + node.label());
}

}  // namespace

std::vector<TreeNode> children(const TreeNode& node) {
    long l = node.level + 1;
    switch (node.kind) {
        case TreeNode::Kind::Root:
            return {singleton(Rational(0), l, 1), interval(Rational(0), Rational(1), l), singleton(Rational(1), l, 1)};
        case TreeNode::Kind::Interval: {
            Rational s = mediant(node.pair.lower, node.pair.upper);
            return {interval(node.pair.lower, s, l), singleton(s, l, 1), interval(s, node.pair.upper, l)};
        }
        default: return {singleton(node.point, l, node.singleton_depth + 1)};
    }
}

Rational weight(const TreeNode& node) {
    switch (node.kind) {
        case TreeNode::Kind::Root: return Rational(1);
        case TreeNode::Kind::Interval: return Rational(1, emergence_level(node.pair));
        default: {
            mpz_class d = node.point.den();
            mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(node.singleton_depth));
            return Rational(mpz_class(1), d);
        }
    }
}

// ---------------------------------------------------------------- boundary paths

BoundaryPath::BoundaryPath(std::vector<TreeNode> prefix, Rule rule) : nodes_(std::move(prefix)), rule_(rule) {
    if (rule == Rule::Toward) throw PreconditionError("a Toward rule needs a target point");
    validate();
}

BoundaryPath::BoundaryPath(std::vector<TreeNode> prefix, const FareyPoint& target)
    : nodes_(std::move(prefix)), rule_(Rule::Toward), target_(target) {
    validate();
}

void BoundaryPath::validate() const {
    if (nodes_.empty() || !(nodes_[0] == TreeNode::root())) throw PreconditionError("boundary path must start at the root");
    for (size_t i = 1; i < nodes_.size(); ++i) {
        bool ok = false;
        for (auto& c : children(nodes_[i - 1])) ok = ok || c == nodes_[i];
        if (!ok) throw PreconditionError("boundary path prefix is not a chain of tree edges");
    }
    const TreeNode& last = nodes_.back();
    switch (rule_) {
        case Rule::Toward:
            if (!last.contains(*target_)) throw PreconditionError("ill-formed path: target " + target_->str() + " not in " + last.label());
            break;
        case Rule::SingletonForever:
            if (last.kind != TreeNode::Kind::Singleton) throw PreconditionError("ill-formed path: singleton-forever rule after a non-singleton node");
            break;
        default:
            if (last.kind != TreeNode::Kind::Interval) throw PreconditionError("ill-formed path: left/right rule needs an interval node");
    }
}

TreeNode BoundaryPath::next() const {
    const TreeNode& last = nodes_.back();
    switch (rule_) {
        case Rule::Toward: return step_toward(last, *target_);
        case Rule::SingletonForever: return children(last)[0];
        case Rule::AlwaysLeft: return children(last)[0];
        default: return children(last)[2];
    }
}

BoundaryPath BoundaryPath::extended(long d) const {
    BoundaryPath p = *this;
    while (p.depth() < d) p.nodes_.push_back(p.next());
    return p;
}

BoundaryPath path_of(const FareyPoint& x, long depth) {
    if (depth < 0) throw PreconditionError("depth must be >= 0");
    return BoundaryPath({TreeNode::root()}, x).extended(depth);
}

FareyPoint represent(const BoundaryPath& path) {
    const TreeNode& last = path.nodes().back();
    switch (path.rule()) {
        case BoundaryPath::Rule::SingletonForever: return FareyPoint::exact(last.point);
        case BoundaryPath::Rule::AlwaysLeft: return FareyPoint::plus(last.pair.lower);
        case BoundaryPath::Rule::AlwaysRight: return FareyPoint::minus(last.pair.upper);
        default: return *path.target();
    }
}

Rational boundary_distance(const BoundaryPath& a, const BoundaryPath& b) {
    if (represent(a) == represent(b)) return Rational(0);
    size_t n = std::min(a.nodes().size(), b.nodes().size());
    for (size_t i = 1; i < n; ++i)
        if (!(a.nodes()[i] == b.nodes()[i])) return weight(a.nodes()[i - 1]);
    throw PreconditionError("paths do not separate within depth " + std::to_string(n - 1) + "; materialize deeper prefixes");
}

}  // namespace kohmoto
