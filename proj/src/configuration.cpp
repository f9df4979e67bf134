#include "githeight/configuration.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "githeight/errors.hpp"
#include "githeight/linalg.hpp"

namespace githeight {

Configuration Configuration::make(int ambient, const std::vector<std::pair<RatVec, Rat>>& raw,
                                  std::vector<int>* index_map) {
    if (ambient < 0) throw Error("configuration: ambient dimension must be >= 0");
    if (raw.empty()) throw Error("configuration: no points");
    struct Tagged {
        RatVec vec;
        Rat mult;
        int src;
    };
    std::vector<Tagged> tagged;
    tagged.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& [v, m] = raw[i];
        if (static_cast<int>(v.size()) != ambient + 1)
            throw Error("configuration: vector length must be ambient+1");
        if (is_zero_vec(v)) throw Error("configuration: zero vector");
        if (sgn(m) <= 0) throw Error("configuration: multiplicity must be positive");
        tagged.push_back({canonical_primitive(v), m, static_cast<int>(i)});
    }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const Tagged& a, const Tagged& b) { return compare_vec(a.vec, b.vec) < 0; });
    Configuration c;
    c.ambient_ = ambient;
    if (index_map) index_map->assign(raw.size(), -1);
    for (auto& t : tagged) {
        if (!c.points_.empty() && compare_vec(c.points_.back().vec, t.vec) == 0) {
            c.points_.back().mult += t.mult;
        } else {
            c.points_.push_back({t.vec, t.mult});
        }
        if (index_map) (*index_map)[t.src] = static_cast<int>(c.points_.size()) - 1;
        c.degree_ += t.mult;
    }
    return c;
}

Configuration Configuration::from_canonical(int ambient, std::vector<ProjPoint> pts) {
    Configuration c;
    c.ambient_ = ambient;
    c.points_ = std::move(pts);
    for (const auto& p : c.points_) c.degree_ += p.mult;
    return c;
}

bool Configuration::is_unit_basis_model() const {
    if (distinct_count() != dim_vectors()) return false;
    for (const auto& p : points_)
        if (p.mult != 1) return false;
    std::vector<RatVec> cols;
    cols.reserve(points_.size());
    for (const auto& p : points_) cols.push_back(p.vec);
    return rank(RatMat::from_columns(cols)) == dim_vectors();
}

namespace {

void fnv_feed(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
}

} // namespace

std::string Configuration::digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    fnv_feed(h, std::to_string(ambient_));
    for (const auto& p : points_) {
        for (const auto& x : p.vec) fnv_feed(h, rat_string(x) + ",");
        fnv_feed(h, "*" + rat_string(p.mult) + ";");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

bool Configuration::operator==(const Configuration& o) const {
    if (ambient_ != o.ambient_ || points_.size() != o.points_.size()) return false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (compare_vec(points_[i].vec, o.points_[i].vec) != 0) return false;
        if (points_[i].mult != o.points_[i].mult) return false;
    }
    return true;
}

Configuration add_configurations(const Configuration& a, const Configuration& b) {
    if (a.ambient() != b.ambient()) throw Error("add_configurations: ambient mismatch");
    std::vector<std::pair<RatVec, Rat>> raw;
    for (const auto& p : a.points()) raw.emplace_back(p.vec, p.mult);
    for (const auto& p : b.points()) raw.emplace_back(p.vec, p.mult);
    return Configuration::make(a.ambient(), raw);
}

} // namespace githeight
