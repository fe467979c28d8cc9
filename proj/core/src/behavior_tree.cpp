#include "game/behavior_tree.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace game {

bool BehaviorTree::operator==(const BehaviorTree& other) const {
    return bt_print(*this) == bt_print(other);
}

std::size_t leaf_count(const BtNode& node) {
    if (node.is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : node.children) n += leaf_count(c);
    return n;
}

std::size_t node_count(const BtNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) n += node_count(c);
    return n;
}

// --- Ticking -----------------------------------------------------------------

namespace {

double dist2(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

bool matches(const UnitView& u, const UnitView& self, Relation rel, UnitFilter filter) {
    if (rel == Relation::Ally ? u.side != self.side : u.side == self.side) return false;
    if (filter == UnitFilter::Melee && u.type != UnitType::Melee) return false;
    if (filter == UnitFilter::Ranged && u.type != UnitType::Ranged) return false;
    return true;
}

// Candidates matching (rel, filter) within `range` of self, in index order.
// Sight uses Euclidean distance; attack reach uses Chebyshev (grid) distance
// so that range-1 melee covers all eight neighbours.
std::vector<const UnitView*> candidates_in(const Observation& obs, Relation rel,
                                           UnitFilter filter, double range,
                                           bool chebyshev = false) {
    std::vector<const UnitView*> out;
    const double r2 = range * range;
    for (const UnitView& u : obs.visible) {
        if (!matches(u, obs.self, rel, filter)) continue;
        if (chebyshev) {
            const double d = std::max(std::abs(u.pos.x - obs.self.pos.x),
                                      std::abs(u.pos.y - obs.self.pos.y));
            if (d <= range) out.push_back(&u);
        } else if (dist2(u.pos, obs.self.pos) <= r2) {
            out.push_back(&u);
        }
    }
    return out;
}

const UnitView* pick(const std::vector<const UnitView*>& cand, TargetQualifier q,
                     const Observation& obs) {
    if (cand.empty()) return nullptr;
    switch (q) {
        case TargetQualifier::Closest: {
            const UnitView* best = cand[0];
            double bd = dist2(best->pos, obs.self.pos);
            for (const auto* u : cand) {
                const double d = dist2(u->pos, obs.self.pos);
                if (d < bd) {
                    bd = d;
                    best = u;
                }
            }
            return best;
        }
        case TargetQualifier::Farthest: {
            const UnitView* best = cand[0];
            double bd = dist2(best->pos, obs.self.pos);
            for (const auto* u : cand) {
                const double d = dist2(u->pos, obs.self.pos);
                if (d > bd) {
                    bd = d;
                    best = u;
                }
            }
            return best;
        }
        case TargetQualifier::Weakest: {
            const UnitView* best = cand[0];
            for (const auto* u : cand)
                if (u->health < best->health) best = u;
            return best;
        }
        case TargetQualifier::Random:
            if (obs.rng == nullptr) return cand[0];
            return cand[obs.rng->uniform_index(cand.size())];
    }
    return nullptr;
}

Vec2 step_toward(const Vec2& from, const Vec2& to) {
    auto sign = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
    return Vec2{sign(to.x - from.x), sign(to.y - from.y)};
}

struct TickResult {
    bool valid = false;
    std::optional<BtAction> action;
};

TickResult tick_action(const BtNode& node, Observation& obs) {
    BtAction act;
    switch (node.action) {
        case ActionAtom::Stand:
            act.kind = ActionKind::Stand;
            return {true, act};
        case ActionAtom::Attack: {
            const auto cand =
                candidates_in(obs, Relation::Enemy, node.filter, obs.attack_range, true);
            const UnitView* t = pick(cand, node.target, obs);
            if (t == nullptr) return {false, std::nullopt};
            act.kind = ActionKind::Attack;
            act.target_unit = t->index;
            return {true, act};
        }
        case ActionAtom::Move: {
            const auto cand = candidates_in(obs, node.relation, node.filter, obs.sight_range);
            const UnitView* t = pick(cand, node.target, obs);
            if (t == nullptr) return {false, std::nullopt};
            act.kind = ActionKind::Move;
            Vec2 s = step_toward(obs.self.pos, t->pos);
            if (node.direction == MoveDirection::Away) s = Vec2{-s.x, -s.y};
            act.step = s;
            return {true, act};
        }
        case ActionAtom::GoTo: {
            if (!obs.target_marker) return {false, std::nullopt};
            const double d = std::sqrt(dist2(obs.self.pos, *obs.target_marker));
            if (d <= node.threshold * obs.sight_range) return {false, std::nullopt};
            act.kind = ActionKind::GoTo;
            act.step = step_toward(obs.self.pos, *obs.target_marker);
            return {true, act};
        }
        case ActionAtom::SetTarget: {
            const auto cand = candidates_in(obs, node.relation, node.filter, obs.sight_range);
            const UnitView* t = pick(cand, node.target, obs);
            if (t == nullptr) return {false, std::nullopt};
            act.kind = ActionKind::SetTarget;
            act.mark = t->pos;
            return {true, act};
        }
    }
    return {false, std::nullopt};
}

bool eval_condition(const BtNode& node, Observation& obs) {
    switch (node.condition) {
        case ConditionAtom::InSight:
            return !candidates_in(obs, node.relation, node.filter, obs.sight_range).empty();
        case ConditionAtom::InReach:
            return !candidates_in(obs, node.relation, node.filter, obs.attack_range, true).empty();
        case ConditionAtom::IsDying: {
            if (node.subject == DyingSubject::Self)
                return obs.self.health < node.threshold * obs.self.max_health;
            const Relation rel =
                node.subject == DyingSubject::Ally ? Relation::Ally : Relation::Enemy;
            for (const UnitView& u : obs.visible)
                if (matches(u, obs.self, rel, UnitFilter::Any) &&
                    u.health < node.threshold * u.max_health)
                    return true;
            return false;
        }
        case ConditionAtom::IsType:
            return node.filter == UnitFilter::Any ||
                   (node.filter == UnitFilter::Melee) == (obs.self.type == UnitType::Melee);
        case ConditionAtom::IsSetTarget:
            return obs.target_marker.has_value();
    }
    return false;
}

// Sequence stops at the first invalid child (fails) or the first child that
// produced an action; Failwith stops at the first valid child.
TickResult tick(const BtNode& node, Observation& obs) {
    switch (node.kind) {
        case BtNodeKind::Action:
            return tick_action(node, obs);
        case BtNodeKind::Condition:
            return {eval_condition(node, obs), std::nullopt};
        case BtNodeKind::Sequence:
            for (const BtNode& c : node.children) {
                TickResult r = tick(c, obs);
                if (!r.valid) return {false, std::nullopt};
                if (r.action) return r;
            }
            return {true, std::nullopt};
        case BtNodeKind::Failwith:
            for (const BtNode& c : node.children) {
                TickResult r = tick(c, obs);
                if (r.valid) return r;
            }
            return {false, std::nullopt};
    }
    return {false, std::nullopt};
}

} // namespace

BtAction bt_tick(const BehaviorTree& tree, Observation& obs) {
    TickResult r = tick(tree.root, obs);
    if (r.valid && r.action) return *r.action;
    return BtAction{};  // Stand fallback
}

// --- Generation & variation ---------------------------------------------------

namespace {

TargetQualifier random_target(Rng& rng) {
    return static_cast<TargetQualifier>(rng.uniform_index(4));
}
UnitFilter random_filter(Rng& rng) { return static_cast<UnitFilter>(rng.uniform_index(3)); }
Relation random_relation(Rng& rng) { return static_cast<Relation>(rng.uniform_index(2)); }

constexpr double kDyingThresholds[] = {0.25, 0.5, 0.75};
constexpr double kGotoThresholds[] = {0.0, 0.25, 0.5, 0.75, 1.0};

void randomize_leaf_params(BtNode& leaf, Rng& rng) {
    leaf.target = random_target(rng);
    leaf.relation = random_relation(rng);
    leaf.filter = random_filter(rng);
    leaf.direction = static_cast<MoveDirection>(rng.uniform_index(2));
    leaf.subject = static_cast<DyingSubject>(rng.uniform_index(3));
    if (leaf.kind == BtNodeKind::Action && leaf.action == ActionAtom::GoTo)
        leaf.threshold = kGotoThresholds[rng.uniform_index(5)];
    else
        leaf.threshold = kDyingThresholds[rng.uniform_index(3)];
}

} // namespace

BtNode random_leaf(Rng& rng) {
    BtNode leaf;
    if (rng.chance(0.5)) {
        leaf.kind = BtNodeKind::Action;
        leaf.action = static_cast<ActionAtom>(rng.uniform_index(5));
    } else {
        leaf.kind = BtNodeKind::Condition;
        leaf.condition = static_cast<ConditionAtom>(rng.uniform_index(5));
    }
    randomize_leaf_params(leaf, rng);
    return leaf;
}

BehaviorTree random_tree(Rng& rng, std::size_t max_leaves) {
    const std::size_t leaves = 1 + rng.uniform_index(std::min<std::size_t>(8, max_leaves));
    std::function<BtNode(std::size_t, std::size_t&)> grow =
        [&](std::size_t depth, std::size_t& budget) -> BtNode {
        BtNode node;
        node.kind = rng.chance(0.5) ? BtNodeKind::Sequence : BtNodeKind::Failwith;
        const std::size_t want = 1 + rng.uniform_index(std::min<std::size_t>(budget, 4));
        for (std::size_t i = 0; i < want && budget > 0; ++i) {
            if (depth + 1 >= 3 || budget == 1 || rng.chance(0.7)) {
                node.children.push_back(random_leaf(rng));
                --budget;
            } else {
                node.children.push_back(grow(depth + 1, budget));
            }
        }
        if (node.children.empty()) {
            node.children.push_back(random_leaf(rng));
            if (budget > 0) --budget;
        }
        return node;
    };
    std::size_t budget = leaves;
    return BehaviorTree{grow(0, budget)};
}

BtOp draw_bt_operator(Rng& rng) {
    const double u = rng.uniform();
    if (u < 0.35) return BtOp::DeleteSubtree;
    if (u < 0.56) return BtOp::AddNode;
    if (u < 0.63) return BtOp::MutateParams;
    if (u < 0.70) return BtOp::ReplaceNode;
    return BtOp::Crossover;
}

namespace {

using NodePath = std::vector<std::size_t>;

void collect_paths(const BtNode& node, NodePath& prefix, std::vector<NodePath>& out,
                   bool include_root) {
    if (include_root || !prefix.empty()) out.push_back(prefix);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        prefix.push_back(i);
        collect_paths(node.children[i], prefix, out, include_root);
        prefix.pop_back();
    }
}

std::vector<NodePath> all_paths(const BtNode& root, bool include_root) {
    std::vector<NodePath> out;
    NodePath prefix;
    if (include_root) {
        collect_paths(root, prefix, out, true);
    } else {
        for (std::size_t i = 0; i < root.children.size(); ++i) {
            prefix.push_back(i);
            collect_paths(root.children[i], prefix, out, true);
            prefix.pop_back();
        }
    }
    return out;
}

BtNode* node_at(BtNode& root, const NodePath& path) {
    BtNode* n = &root;
    for (std::size_t i : path) n = &n->children[i];
    return n;
}

// Removes the node at `path` and prunes control nodes left empty.
// Returns false when removal would leave the tree without leaves.
bool delete_at(BtNode& root, const NodePath& path) {
    if (path.empty()) return false;
    BtNode* parent = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) parent = &parent->children[path[i]];
    parent->children.erase(parent->children.begin() +
                           static_cast<std::ptrdiff_t>(path.back()));
    // Prune upward: drop parents that became empty.
    NodePath cur(path.begin(), path.end() - 1);
    while (!cur.empty()) {
        BtNode* n = node_at(root, cur);
        if (!n->children.empty()) break;
        BtNode* p = &root;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) p = &p->children[cur[i]];
        p->children.erase(p->children.begin() + static_cast<std::ptrdiff_t>(cur.back()));
        cur.pop_back();
    }
    return leaf_count(root) > 0;
}

bool apply_delete(BehaviorTree& t, Rng& rng) {
    auto paths = all_paths(t.root, false);
    if (paths.empty()) return false;
    // Pick among deletions that keep at least one leaf.
    for (int attempt = 0; attempt < 10; ++attempt) {
        BehaviorTree trial = t;
        const NodePath& path = paths[rng.uniform_index(paths.size())];
        if (delete_at(trial.root, path)) {
            t = std::move(trial);
            return true;
        }
    }
    return false;
}

void apply_add(BehaviorTree& t, Rng& rng) {
    // Insertion point: any control node.
    std::vector<BtNode*> controls;
    std::function<void(BtNode&)> walk = [&](BtNode& n) {
        if (!n.is_leaf()) {
            controls.push_back(&n);
            for (auto& c : n.children) walk(c);
        }
    };
    walk(t.root);
    BtNode* host = controls[rng.uniform_index(controls.size())];
    BtNode fresh;
    if (rng.chance(0.8)) {
        fresh = random_leaf(rng);
    } else {
        fresh.kind = rng.chance(0.5) ? BtNodeKind::Sequence : BtNodeKind::Failwith;
        fresh.children.push_back(random_leaf(rng));
    }
    const std::size_t pos = rng.uniform_index(host->children.size() + 1);
    host->children.insert(host->children.begin() + static_cast<std::ptrdiff_t>(pos),
                          std::move(fresh));
}

void apply_mutate(BehaviorTree& t, Rng& rng) {
    auto paths = all_paths(t.root, true);
    BtNode* n = node_at(t.root, paths[rng.uniform_index(paths.size())]);
    if (n->is_leaf()) {
        randomize_leaf_params(*n, rng);
    } else {
        n->kind = n->kind == BtNodeKind::Sequence ? BtNodeKind::Failwith : BtNodeKind::Sequence;
    }
}

void apply_replace(BehaviorTree& t, Rng& rng) {
    auto paths = all_paths(t.root, false);
    if (paths.empty()) {
        apply_mutate(t, rng);
        return;
    }
    BtNode* n = node_at(t.root, paths[rng.uniform_index(paths.size())]);
    *n = random_leaf(rng);
}

void apply_crossover(BehaviorTree& t, const BehaviorTree& donor, Rng& rng) {
    BehaviorTree donor_copy = donor;  // t may alias donor
    auto donor_paths = all_paths(donor_copy.root, true);
    BtNode sub = *node_at(donor_copy.root, donor_paths[rng.uniform_index(donor_paths.size())]);
    auto paths = all_paths(t.root, false);
    if (paths.empty()) {
        t.root.children.push_back(std::move(sub));
        return;
    }
    BtNode* target = node_at(t.root, paths[rng.uniform_index(paths.size())]);
    *target = std::move(sub);
}

} // namespace

BtVariationResult bt_variation(const BehaviorTree& elite1, const BehaviorTree& elite2,
                               Rng& rng, std::size_t max_leaves) {
    const BtOp drawn = draw_bt_operator(rng);
    for (int attempt = 0; attempt < 10; ++attempt) {
        BehaviorTree child = elite1;
        BtOp applied = drawn;
        switch (drawn) {
            case BtOp::DeleteSubtree:
                if (!apply_delete(child, rng)) {
                    // Tree too small to lose a node; mutate parameters instead.
                    apply_mutate(child, rng);
                    applied = BtOp::MutateParams;
                }
                break;
            case BtOp::AddNode:
                apply_add(child, rng);
                break;
            case BtOp::MutateParams:
                apply_mutate(child, rng);
                break;
            case BtOp::ReplaceNode:
                apply_replace(child, rng);
                break;
            case BtOp::Crossover:
                apply_crossover(child, elite2, rng);
                break;
        }
        const std::size_t leaves = leaf_count(child);
        if (leaves >= 1 && leaves <= max_leaves) return {std::move(child), drawn, applied};
    }
    // Budget still violated: fall back to a guaranteed-shrinking deletion.
    BehaviorTree child = elite1;
    if (apply_delete(child, rng)) return {std::move(child), drawn, BtOp::DeleteSubtree};
    apply_mutate(child, rng);
    return {std::move(child), drawn, BtOp::MutateParams};
}

// --- Serialization -------------------------------------------------------------

namespace {

const char* target_name(TargetQualifier t) {
    switch (t) {
        case TargetQualifier::Closest: return "closest";
        case TargetQualifier::Farthest: return "farthest";
        case TargetQualifier::Weakest: return "weakest";
        case TargetQualifier::Random: return "random";
    }
    return "?";
}

const char* filter_name(UnitFilter f) {
    switch (f) {
        case UnitFilter::Any: return "any";
        case UnitFilter::Melee: return "melee";
        case UnitFilter::Ranged: return "ranged";
    }
    return "?";
}

const char* relation_name(Relation r) { return r == Relation::Ally ? "ally" : "enemy"; }

const char* subject_name(DyingSubject s) {
    switch (s) {
        case DyingSubject::Self: return "self";
        case DyingSubject::Ally: return "ally";
        case DyingSubject::Enemy: return "enemy";
    }
    return "?";
}

std::string threshold_text(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void print_node(const BtNode& n, std::string& out) {
    if (n.kind == BtNodeKind::Sequence || n.kind == BtNodeKind::Failwith) {
        out += n.kind == BtNodeKind::Sequence ? "(seq" : "(failwith";
        for (const auto& c : n.children) {
            out += ' ';
            print_node(c, out);
        }
        out += ')';
        return;
    }
    if (n.kind == BtNodeKind::Action) {
        switch (n.action) {
            case ActionAtom::Stand:
                out += "(stand)";
                return;
            case ActionAtom::Attack:
                out += std::string("(attack ") + target_name(n.target) + ' ' +
                       filter_name(n.filter) + ')';
                return;
            case ActionAtom::Move:
                out += std::string("(move ") +
                       (n.direction == MoveDirection::Toward ? "toward" : "away") + ' ' +
                       relation_name(n.relation) + ' ' + target_name(n.target) + ' ' +
                       filter_name(n.filter) + ')';
                return;
            case ActionAtom::GoTo:
                out += "(goto " + threshold_text(n.threshold) + ')';
                return;
            case ActionAtom::SetTarget:
                out += std::string("(set-target ") + relation_name(n.relation) + ' ' +
                       target_name(n.target) + ' ' + filter_name(n.filter) + ')';
                return;
        }
    }
    switch (n.condition) {
        case ConditionAtom::InSight:
            out += std::string("(in-sight ") + relation_name(n.relation) + ' ' +
                   filter_name(n.filter) + ')';
            return;
        case ConditionAtom::InReach:
            out += std::string("(in-reach ") + relation_name(n.relation) + ' ' +
                   filter_name(n.filter) + ')';
            return;
        case ConditionAtom::IsDying:
            out += std::string("(is-dying ") + subject_name(n.subject) + ' ' +
                   threshold_text(n.threshold) + ')';
            return;
        case ConditionAtom::IsType:
            out += std::string("(is-type ") + filter_name(n.filter) + ')';
            return;
        case ConditionAtom::IsSetTarget:
            out += "(is-set-target)";
            return;
    }
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        if (pos >= text.size()) throw std::invalid_argument("bt parse: unexpected end");
        return text[pos];
    }

    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument(std::string("bt parse: expected '") + c + "' at " +
                                        std::to_string(pos));
        ++pos;
    }

    std::string token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos) throw std::invalid_argument("bt parse: empty token");
        return text.substr(start, pos - start);
    }

    TargetQualifier parse_target() {
        const std::string t = token();
        if (t == "closest") return TargetQualifier::Closest;
        if (t == "farthest") return TargetQualifier::Farthest;
        if (t == "weakest") return TargetQualifier::Weakest;
        if (t == "random") return TargetQualifier::Random;
        throw std::invalid_argument("bt parse: bad target qualifier: " + t);
    }

    UnitFilter parse_filter() {
        const std::string t = token();
        if (t == "any") return UnitFilter::Any;
        if (t == "melee") return UnitFilter::Melee;
        if (t == "ranged") return UnitFilter::Ranged;
        throw std::invalid_argument("bt parse: bad unit filter: " + t);
    }

    Relation parse_relation() {
        const std::string t = token();
        if (t == "ally") return Relation::Ally;
        if (t == "enemy") return Relation::Enemy;
        throw std::invalid_argument("bt parse: bad relation: " + t);
    }

    double parse_number() {
        const std::string t = token();
        try {
            return std::stod(t);
        } catch (const std::exception&) {
            throw std::invalid_argument("bt parse: bad number: " + t);
        }
    }

    BtNode parse_node() {
        expect('(');
        const std::string head = token();
        BtNode n;
        if (head == "seq" || head == "failwith") {
            n.kind = head == "seq" ? BtNodeKind::Sequence : BtNodeKind::Failwith;
            while (peek() != ')') n.children.push_back(parse_node());
            expect(')');
            if (n.children.empty())
                throw std::invalid_argument("bt parse: empty control node");
            return n;
        }
        if (head == "stand") {
            n.kind = BtNodeKind::Action;
            n.action = ActionAtom::Stand;
        } else if (head == "attack") {
            n.kind = BtNodeKind::Action;
            n.action = ActionAtom::Attack;
            n.target = parse_target();
            n.filter = parse_filter();
        } else if (head == "move") {
            n.kind = BtNodeKind::Action;
            n.action = ActionAtom::Move;
            const std::string dir = token();
            if (dir != "toward" && dir != "away")
                throw std::invalid_argument("bt parse: bad move direction: " + dir);
            n.direction = dir == "toward" ? MoveDirection::Toward : MoveDirection::Away;
            n.relation = parse_relation();
            n.target = parse_target();
            n.filter = parse_filter();
        } else if (head == "goto") {
            n.kind = BtNodeKind::Action;
            n.action = ActionAtom::GoTo;
            n.threshold = parse_number();
        } else if (head == "set-target") {
            n.kind = BtNodeKind::Action;
            n.action = ActionAtom::SetTarget;
            n.relation = parse_relation();
            n.target = parse_target();
            n.filter = parse_filter();
        } else if (head == "in-sight" || head == "in-reach") {
            n.kind = BtNodeKind::Condition;
            n.condition = head == "in-sight" ? ConditionAtom::InSight : ConditionAtom::InReach;
            n.relation = parse_relation();
            n.filter = parse_filter();
        } else if (head == "is-dying") {
            n.kind = BtNodeKind::Condition;
            n.condition = ConditionAtom::IsDying;
            const std::string s = token();
            if (s == "self") n.subject = DyingSubject::Self;
            else if (s == "ally") n.subject = DyingSubject::Ally;
            else if (s == "enemy") n.subject = DyingSubject::Enemy;
            else throw std::invalid_argument("bt parse: bad dying subject: " + s);
            n.threshold = parse_number();
        } else if (head == "is-type") {
            n.kind = BtNodeKind::Condition;
            n.condition = ConditionAtom::IsType;
            n.filter = parse_filter();
        } else if (head == "is-set-target") {
            n.kind = BtNodeKind::Condition;
            n.condition = ConditionAtom::IsSetTarget;
        } else {
            throw std::invalid_argument("bt parse: unknown atom: " + head);
        }
        expect(')');
        return n;
    }
};

} // namespace

std::string bt_print(const BehaviorTree& tree) {
    std::string out;
    print_node(tree.root, out);
    return out;
}

BehaviorTree bt_parse(const std::string& text) {
    Parser p(text);
    BtNode root = p.parse_node();
    p.skip_ws();
    if (p.pos != text.size())
        throw std::invalid_argument("bt parse: trailing characters");
    if (root.is_leaf()) {
        // Normalize: root is always a control node.
        BtNode wrap;
        wrap.kind = BtNodeKind::Failwith;
        wrap.children.push_back(std::move(root));
        root = std::move(wrap);
    }
    return BehaviorTree{std::move(root)};
}

} // namespace game
