#include "cmslab/tensorfield.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "cmslab/ambient.hpp"
#include "cmslab/frame.hpp"

namespace cmslab {

TensorField::TensorField(std::vector<Slot> sig, int order) : sig_(std::move(sig)) {
    stride_.assign(sig_.size(), 1);
    int total = 1;
    for (int k = static_cast<int>(sig_.size()) - 1; k >= 0; --k) {
        stride_[static_cast<std::size_t>(k)] = total;
        total *= slot_dim(sig_[static_cast<std::size_t>(k)]);
    }
    comp_.assign(static_cast<std::size_t>(total), Jet::constant(0.0, order));
}

TensorField TensorField::scalar(Jet j) {
    TensorField f;
    f.comp_.push_back(std::move(j));
    return f;
}

std::size_t TensorField::offset(std::initializer_list<int> idx) const {
    if (idx.size() != sig_.size()) throw Error("tensor index rank mismatch");
    std::size_t off = 0, k = 0;
    for (int i : idx) {
        if (i < 0 || i >= slot_dim(sig_[k])) throw Error("tensor index out of range");
        off += static_cast<std::size_t>(i) * static_cast<std::size_t>(stride_[k]);
        ++k;
    }
    return off;
}

TensorField operator-(const TensorField& a, const TensorField& b) {
    if (a.sig_ != b.sig_) throw Error("tensor signature mismatch in subtraction");
    TensorField r = a;
    for (std::size_t i = 0; i < r.comp_.size(); ++i) r.comp_[i] = r.comp_[i] - b.comp_[i];
    return r;
}

TensorField operator+(const TensorField& a, const TensorField& b) {
    if (a.sig_ != b.sig_) throw Error("tensor signature mismatch in addition");
    TensorField r = a;
    for (std::size_t i = 0; i < r.comp_.size(); ++i) r.comp_[i] = r.comp_[i] + b.comp_[i];
    return r;
}

TensorField chart_partial(const TensorField& f, int a) {
    TensorField r = f;
    for (int i = 0; i < r.size(); ++i) r.flat(i) = f.flat(i).derivative(a == 0 ? Var::U : Var::V);
    return r;
}

TensorField time_partial(const TensorField& f) {
    TensorField r = f;
    for (int i = 0; i < r.size(); ++i) r.flat(i) = f.flat(i).dt();
    return r;
}

TensorField covariant_derivative(const TensorField& f, const FrameSample& fr,
                                 const AmbientFrame* amb) {
    if (f.size() == 0) throw Error("covariant derivative of an empty field");
    std::vector<Slot> sig = f.signature();
    for (Slot s : sig)
        if ((s == Slot::AmbUp || s == Slot::AmbLo) && amb == nullptr)
            throw Error("covariant derivative of a field with ambient slots needs an ambient frame");

    std::vector<Slot> out_sig;
    out_sig.reserve(sig.size() + 1);
    out_sig.push_back(Slot::SurfLo);
    out_sig.insert(out_sig.end(), sig.begin(), sig.end());

    const int order = f.flat(0).order();
    TensorField r(out_sig, order);

    const int n = f.size();
    for (int g = 0; g < 2; ++g) {
        const Var dir = (g == 0) ? Var::U : Var::V;
        for (int i = 0; i < n; ++i) {
            Jet acc = f.flat(i).derivative(dir);
            for (int k = 0; k < f.rank(); ++k) {
                const Slot s = sig[static_cast<std::size_t>(k)];
                if (s == Slot::Comp) continue;
                const int dim = slot_dim(s);
                const int st = f.stride(k);
                const int own = (i / st) % dim;
                const int base = i - own * st;
                for (int e = 0; e < dim; ++e) {
                    const Jet& other = f.flat(base + e * st);
                    switch (s) {
                        case Slot::SurfUp:
                            acc = acc + fr.gamma[own][g][e] * other;
                            break;
                        case Slot::SurfLo:
                            acc = acc - fr.gamma[e][g][own] * other;
                            break;
                        case Slot::AmbUp:
                            for (int m = 0; m < 3; ++m)
                                acc = acc + amb->shift[m][g] * amb->gamma[own][m][e] * other;
                            break;
                        case Slot::AmbLo:
                            for (int m = 0; m < 3; ++m)
                                acc = acc - amb->shift[m][g] * amb->gamma[e][m][own] * other;
                            break;
                        case Slot::Comp:
                            break;
                    }
                }
            }
            r.flat(g * n + i) = acc;
        }
    }
    return r;
}

double max_abs_value(const TensorField& f) {
    double m = 0.0;
    for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.flat(i).value()));
    return m;
}

Expr random_field_expr(std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    std::uniform_int_distribution<int> freq(1, 3);
    std::uniform_int_distribution<int> tfreq(1, 2);
    std::uniform_int_distribution<int> pick(0, 1);

    auto wave = [&](const char* var, int k) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s(%d*%s+%.6f)", pick(rng) ? "sin" : "cos", k, var,
                      phase(rng));
        return std::string(buf);
    };

    std::string src;
    for (int term = 0; term < 3; ++term) {
        char head[32];
        std::snprintf(head, sizeof head, term ? "%+.6f*" : "%.6f*", amp(rng));
        src += head;
        src += wave("u", freq(rng));
        src += "*";
        src += wave("v", freq(rng));
        src += "*";
        src += wave("t", tfreq(rng));
    }
    return Expr::parse(src);
}

} // namespace cmslab
