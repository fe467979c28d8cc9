#ifndef GAME_BEHAVIOR_TREE_HPP
#define GAME_BEHAVIOR_TREE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "game/duel.hpp"
#include "game/rng.hpp"

namespace game {

enum class UnitType : std::uint8_t { Melee = 0, Ranged = 1 };

enum class BtNodeKind : std::uint8_t { Sequence, Failwith, Action, Condition };
enum class ActionAtom : std::uint8_t { Stand, Attack, Move, GoTo, SetTarget };
enum class ConditionAtom : std::uint8_t { InSight, InReach, IsDying, IsType, IsSetTarget };
enum class TargetQualifier : std::uint8_t { Closest, Farthest, Weakest, Random };
enum class Relation : std::uint8_t { Ally, Enemy };
enum class MoveDirection : std::uint8_t { Toward, Away };
enum class DyingSubject : std::uint8_t { Self, Ally, Enemy };
enum class UnitFilter : std::uint8_t { Any, Melee, Ranged };

// One node; leaves ignore `children`, control nodes ignore the atom fields.
struct BtNode {
    BtNodeKind kind = BtNodeKind::Sequence;
    std::vector<BtNode> children;

    ActionAtom action = ActionAtom::Stand;
    ConditionAtom condition = ConditionAtom::InSight;
    TargetQualifier target = TargetQualifier::Closest;
    Relation relation = Relation::Enemy;
    MoveDirection direction = MoveDirection::Toward;
    DyingSubject subject = DyingSubject::Self;
    UnitFilter filter = UnitFilter::Any;
    double threshold = 0.5;

    bool is_leaf() const { return kind == BtNodeKind::Action || kind == BtNodeKind::Condition; }
};

struct BehaviorTree {
    BtNode root;  // always a control node

    bool operator==(const BehaviorTree& other) const;
};

std::size_t leaf_count(const BtNode& node);
std::size_t node_count(const BtNode& node);
inline std::size_t leaf_count(const BehaviorTree& t) { return leaf_count(t.root); }
inline std::size_t node_count(const BehaviorTree& t) { return node_count(t.root); }

inline constexpr std::size_t kDefaultMaxLeaves = 32;

// --- Ticking ---------------------------------------------------------------

struct UnitView {
    std::size_t index = 0;  // global unit index in the duel
    Side side = Side::Red;
    UnitType type = UnitType::Melee;
    Vec2 pos;
    double health = 0.0;
    double max_health = 1.0;
};

// The acting unit's local view: itself, everything within its sight range,
// and the side's shared target marker.
struct Observation {
    UnitView self;
    std::vector<UnitView> visible;  // within sight, self excluded
    std::optional<Vec2> target_marker;
    double sight_range = 1.0;
    double attack_range = 1.0;  // acting unit's reach
    Rng* rng = nullptr;          // consumed by the Random qualifier
};

struct BtAction {
    ActionKind kind = ActionKind::Stand;
    std::optional<std::size_t> target_unit;  // Attack
    Vec2 step;                                // Move/GoTo: intended displacement sign
    std::optional<Vec2> mark;                 // SetTarget: position to mark
};

// Leftmost depth-first traversal to the first valid action; Stand if none.
BtAction bt_tick(const BehaviorTree& tree, Observation& obs);

// --- Generation & variation -------------------------------------------------

BtNode random_leaf(Rng& rng);
// Random tree of depth <= 3 with 1..8 leaves, control root.
BehaviorTree random_tree(Rng& rng, std::size_t max_leaves = kDefaultMaxLeaves);

enum class BtOp : std::uint8_t { DeleteSubtree, AddNode, MutateParams, ReplaceNode, Crossover };

// Draws the variation operator with probabilities
// (0.35, 0.21, 0.07, 0.07, 0.30) in the enum's order.
BtOp draw_bt_operator(Rng& rng);

struct BtVariationResult {
    BehaviorTree tree;
    BtOp drawn;     // operator initially drawn
    BtOp applied;   // operator finally applied (fallbacks may differ)
};

// One variation step. Results violating the leaf budget are redrawn up to 10
// times before falling back to a safe deletion (then parameter mutation).
BtVariationResult bt_variation(const BehaviorTree& elite1, const BehaviorTree& elite2,
                               Rng& rng, std::size_t max_leaves = kDefaultMaxLeaves);

// --- Serialization (canonical s-expressions) --------------------------------

std::string bt_print(const BehaviorTree& tree);
BehaviorTree bt_parse(const std::string& text);

} // namespace game

#endif
