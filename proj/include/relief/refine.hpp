/**
 * @file refine.hpp
 * @brief Closed-loop box refinement: a box regressor whose output is fed back
 *        as its own input for a bounded number of rounds.
 *
 * The regressor is pluggable. Two reference regressors ship here: identity,
 * and a fixed affine delta in the usual R-CNN parametrization
 * (center shift as a fraction of size, log-scale size change).
 */
#pragma once

#include <relief/boxes.hpp>

#include <memory>
#include <span>
#include <vector>

namespace relief::refine {

enum class RegressorKind { kIdentity, kAffine };

std::string_view to_string(RegressorKind kind);
RegressorKind regressor_kind_from_string(std::string_view text);

struct RegressorSpec {
    RegressorKind kind = RegressorKind::kIdentity;
    double dx = 0.0;  ///< center shift, fraction of width
    double dy = 0.0;  ///< center shift, fraction of height
    double dw = 0.0;  ///< log width scale
    double dh = 0.0;  ///< log height scale

    friend bool operator==(const RegressorSpec&, const RegressorSpec&) = default;
};

struct RefineConfig {
    int loops = 3;
    double convergence_eps = 0.5;  ///< px; a round where every corner moves less than this stops the loop

    void validate() const;

    friend bool operator==(const RefineConfig&, const RefineConfig&) = default;
};

class BoxRegressor {
public:
    virtual ~BoxRegressor() = default;
    virtual BoxPx apply(const BoxPx& box, const GeometryMeta& geom) const = 0;
};

class IdentityRegressor final : public BoxRegressor {
public:
    BoxPx apply(const BoxPx& box, const GeometryMeta&) const override { return box; }
};

class AffineRegressor final : public BoxRegressor {
public:
    AffineRegressor(double dx, double dy, double dw, double dh) : dx_(dx), dy_(dy), dw_(dw), dh_(dh) {}
    BoxPx apply(const BoxPx& box, const GeometryMeta& geom) const override;

private:
    double dx_, dy_, dw_, dh_;
};

std::unique_ptr<BoxRegressor> make_regressor(const RegressorSpec& spec);

/// One regressor pass. Identity returns the box untouched; affine marks it refined.
BoxPx apply_regressor(const RegressorSpec& spec, const BoxPx& box, const GeometryMeta& geom);

/**
 * @brief Feeds each box back through the regressor up to cfg.loops times.
 *
 * A box stops early once a round moves all four corners by less than
 * convergence_eps. No box is dropped and order is kept. A box whose final
 * extent differs from its input gets kind refined; otherwise its kind is kept.
 */
std::vector<BoxPx> recursive_refine(const BoxRegressor& regressor, std::span<const BoxPx> boxes,
                                    const RefineConfig& cfg, const GeometryMeta& geom);

std::vector<BoxPx> recursive_refine(const RegressorSpec& spec, std::span<const BoxPx> boxes,
                                    const RefineConfig& cfg, const GeometryMeta& geom);

}  // namespace relief::refine
