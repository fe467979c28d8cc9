#include "game/behavior_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace game {

std::string to_string(DistanceKind kind) {
    return kind == DistanceKind::Cosine ? "cosine" : "euclidean";
}

DistanceKind distance_kind_from_string(const std::string& name) {
    if (name == "cosine") return DistanceKind::Cosine;
    if (name == "euclidean") return DistanceKind::Euclidean;
    throw std::invalid_argument("unknown distance kind: " + name);
}

void validate_behavior(const BehaviorVector& b) {
    if (b.values.empty()) throw std::invalid_argument("behavior vector is empty");
    double sq = 0.0;
    for (double v : b.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("behavior vector has non-finite entry");
        sq += v * v;
    }
    if (b.kind == DistanceKind::Cosine && sq == 0.0)
        throw std::invalid_argument("zero behavior vector under cosine distance");
}

double distance(const BehaviorVector& a, const BehaviorVector& b) {
    if (a.kind != b.kind)
        throw std::invalid_argument("behavior distance kind mismatch");
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("behavior dimension mismatch: " +
                                    std::to_string(a.values.size()) + " vs " +
                                    std::to_string(b.values.size()));
    if (a.kind == DistanceKind::Cosine) {
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            dot += a.values[i] * b.values[i];
            na += a.values[i] * a.values[i];
            nb += b.values[i] * b.values[i];
        }
        if (na == 0.0 || nb == 0.0)
            throw std::invalid_argument("cosine distance undefined for zero vector");
        // sqrt(na*nb) keeps distance(a,a) exactly zero; clamp absorbs the
        // remaining rounding at the range ends.
        const double d = 1.0 - dot / std::sqrt(na * nb);
        return d < 0.0 ? 0.0 : (d > 2.0 ? 2.0 : d);
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

} // namespace game
