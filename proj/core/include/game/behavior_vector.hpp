#ifndef GAME_BEHAVIOR_VECTOR_HPP
#define GAME_BEHAVIOR_VECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace game {

enum class DistanceKind : std::uint8_t { Cosine, Euclidean };

std::string to_string(DistanceKind kind);
DistanceKind distance_kind_from_string(const std::string& name);

// Fixed-length real vector describing one evaluation's behavior. The distance
// kind travels with the vector so archives can reject mismatched inputs.
struct BehaviorVector {
    std::vector<double> values;
    DistanceKind kind = DistanceKind::Euclidean;

    std::size_t dim() const { return values.size(); }
    bool operator==(const BehaviorVector&) const = default;
};

// Throws std::invalid_argument on empty/non-finite values, or on an all-zero
// vector under Cosine (where the distance is undefined).
void validate_behavior(const BehaviorVector& b);

// Cosine -> 1 - a.b/(|a||b|), range [0,2]. Euclidean -> |a-b|.
// Throws on length/kind mismatch.
double distance(const BehaviorVector& a, const BehaviorVector& b);

} // namespace game

#endif
