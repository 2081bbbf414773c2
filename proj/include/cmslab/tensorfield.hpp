#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cmslab/expr.hpp"
#include "cmslab/jet.hpp"

namespace cmslab {

struct FrameSample;
struct AmbientFrame;

/// Index slots a field can carry.  Surface slots range over {0,1} (the chart
/// directions), ambient slots over {0,1,2} (the ambient coordinate system in
/// use).  Comp is an inert 3-slot for Cartesian component lists that transform
/// as scalars under both chart and ambient coordinate changes.
enum class Slot : std::uint8_t { SurfUp, SurfLo, AmbUp, AmbLo, Comp };

inline int slot_dim(Slot s) {
    return (s == Slot::SurfUp || s == Slot::SurfLo) ? 2 : 3;
}

/// Dense tensor field sampled at one node: every component is a Jet in
/// (u, v, t), so chart and time derivatives of the whole field stay available
/// until the jets' valid depth runs out.  Storage is row-major over the slots.
class TensorField {
public:
    TensorField() = default;
    TensorField(std::vector<Slot> sig, int order);
    static TensorField scalar(Jet j);

    const std::vector<Slot>& signature() const { return sig_; }
    int rank() const { return static_cast<int>(sig_.size()); }
    int size() const { return static_cast<int>(comp_.size()); }

    Jet& flat(int i) { return comp_[static_cast<std::size_t>(i)]; }
    const Jet& flat(int i) const { return comp_[static_cast<std::size_t>(i)]; }
    Jet& at(std::initializer_list<int> idx) { return comp_[offset(idx)]; }
    const Jet& at(std::initializer_list<int> idx) const { return comp_[offset(idx)]; }

    /// Stride of slot k in the flat layout.
    int stride(int k) const { return stride_[static_cast<std::size_t>(k)]; }

    friend TensorField operator-(const TensorField& a, const TensorField& b);
    friend TensorField operator+(const TensorField& a, const TensorField& b);

private:
    std::size_t offset(std::initializer_list<int> idx) const;

    std::vector<Slot> sig_;
    std::vector<int> stride_;
    std::vector<Jet> comp_;
};

/// Plain chart partial d/du^a (a in {0,1}) of every component; no new slot.
TensorField chart_partial(const TensorField& f, int a);

/// Plain time partial of every component.
TensorField time_partial(const TensorField& f);

/// Surface covariant derivative: prepends one SurfLo slot and adds the
/// connection terms for every slot of f.  Ambient slots need `amb` for the
/// ambient Christoffel symbols and the shift tensor's chart factors; passing
/// a field with ambient slots and amb == nullptr is an error.
TensorField covariant_derivative(const TensorField& f, const FrameSample& fr,
                                 const AmbientFrame* amb = nullptr);

/// Largest |value()| over all components.
double max_abs_value(const TensorField& f);

/// Deterministic smooth scalar field of (u, v, t): a short sum of products of
/// integer-frequency sines and cosines, so it is 2*pi-periodic in u and v and
/// safe on periodic charts.  Same seed, same expression text, every run.
Expr random_field_expr(std::uint32_t seed);

} // namespace cmslab
