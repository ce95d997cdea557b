#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/polytope.hpp"

namespace orlicz {

// A convex body represented by its support function. The evaluator is pure;
// the direction/value table is filled on the first grid evaluation and then
// behaves as if it had been computed eagerly.
class SupportBody {
public:
    SupportBody(int dim, std::function<double(const Vector&)> h, std::string provenance)
        : dim_(dim), h_(std::move(h)), provenance_(std::move(provenance)) {
        if (dim_ < 1) throw std::invalid_argument("SupportBody: dimension must be >= 1");
    }

    static SupportBody from_polytope(Polytope p, std::string provenance = "polytope") {
        auto sp = std::make_shared<const Polytope>(std::move(p));
        return SupportBody(
            sp->ambient_dim(), [sp](const Vector& x) { return sp->support(x); },
            std::move(provenance));
    }

    int ambient_dim() const { return dim_; }
    const std::string& provenance() const { return provenance_; }

    double operator()(const Vector& x) const {
        if (x.size() != dim_) throw std::invalid_argument("SupportBody: dimension mismatch");
        if (x.norm() == 0.0) return 0.0;
        return h_(x);
    }

    // Values over a direction grid; the first grid seen is cached.
    const std::vector<double>& evaluate_grid(const std::vector<Vector>& dirs) const {
        if (cache_ && same_grid(cache_->first, dirs)) return cache_->second;
        std::vector<double> vals(dirs.size());
        for (std::size_t i = 0; i < dirs.size(); ++i) vals[i] = (*this)(dirs[i]);
        if (!cache_) cache_.emplace(dirs, std::move(vals));
        else scratch_ = std::move(vals);
        return cache_ && same_grid(cache_->first, dirs) ? cache_->second : scratch_;
    }

    bool has_cache() const { return cache_.has_value(); }
    const std::vector<Vector>& cached_directions() const { return cache_->first; }

private:
    static bool same_grid(const std::vector<Vector>& a, const std::vector<Vector>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

    int dim_;
    std::function<double(const Vector&)> h_;
    std::string provenance_;
    mutable std::optional<std::pair<std::vector<Vector>, std::vector<double>>> cache_;
    mutable std::vector<double> scratch_;
};

}  // namespace orlicz
