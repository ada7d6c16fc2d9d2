#pragma once

// Cohomology of the four complexes by exact ranks, induced maps on
// cohomology, and the exactness checks of the S, I, B long exact sequence.

#include "operators.hpp"

#include <map>

namespace cwb {

struct DegreeCohomology {
    Node node;
    std::size_t dim_space = 0;
    std::size_t dim_Z = 0;
    std::size_t dim_B = 0;
    std::size_t dim_H = 0;
    SparseMatrix reps;  // coordinates of the representatives, dim_space x dim_H
};

struct InducedMap {
    ChainOperator op;
    SparseMatrix matrix;  // H(target) coordinates of the images of the source representatives
    std::size_t rank = 0;
};

struct SbiVerdict {
    std::string node;         // e.g. "H^2(D)"
    std::string proposition;  // "IS", "BI" or "SB"
    int degree = 0;
    std::size_t kernel_dim = 0;  // kernel of the outgoing map
    std::size_t image_dim = 0;   // image of the incoming map
    bool composite_zero = true;
    bool equal = false;
};

struct ShiftIsoVerdict {
    int n = 0;
    std::size_t dim_source = 0;  // H^n(G)
    std::size_t dim_target = 0;  // H^{n+2}(D)
    bool RS_identity = false;
    bool SR_identity = false;
    bool holds() const { return dim_source == dim_target && RS_identity && SR_identity; }
};

namespace detail {

// [a | b] for matrices with the same row count.
inline SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b)
{
    SparseMatrix::Builder out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        a.for_row(r, [&](std::size_t c, const Scalar& v) { out.add(c, v); });
        b.for_row(r, [&](std::size_t c, const Scalar& v) { out.add(a.cols() + c, v); });
        out.finish_row();
    }
    return out.finish();
}

inline SparseMatrix row_block(const SparseMatrix& m, std::size_t begin, std::size_t end)
{
    SparseMatrix::Builder out(end - begin, m.cols());
    for (std::size_t r = begin; r < end; ++r) {
        m.for_row(r, [&](std::size_t c, const Scalar& v) { out.add(c, v); });
        out.finish_row();
    }
    return out.finish();
}

}  // namespace detail

// Per-workbench cache of differentials, ranks and representatives.
class CohomologyEngine {
public:
    explicit CohomologyEngine(const Workbench& w, std::size_t guard = kMaterializationGuard) : w_(w), guard_(guard) {}

    const Workbench& workbench() const noexcept { return w_; }

    std::size_t space_dim(Node n) const
    {
        if (w_.ambient(n) == 0) return 0;
        return w_.space(n).dim();
    }

    // Coordinate matrix of the differential leaving node n.
    const SparseMatrix& differential(Node n)
    {
        auto key = std::make_pair(n.complex, n.degree);
        auto it = diffs_.find(key);
        if (it != diffs_.end()) return it->second;
        SparseMatrix m;
        Node next{n.complex, n.degree + 1};
        if (space_dim(n) == 0)
            m = SparseMatrix(space_dim(next), 0);
        else
            m = coordinate_matrix(w_, w_.d(n.complex, n.degree), guard_);
        return diffs_.emplace(key, std::move(m)).first->second;
    }

    std::size_t differential_rank(Node n)
    {
        auto key = std::make_pair(n.complex, n.degree);
        auto it = ranks_.find(key);
        if (it != ranks_.end()) return it->second;
        std::size_t r = space_dim(n) == 0 ? 0 : rank(differential(n));
        ranks_.emplace(key, r);
        return r;
    }

    const DegreeCohomology& at(Node n)
    {
        auto key = std::make_pair(n.complex, n.degree);
        auto it = nodes_.find(key);
        if (it != nodes_.end()) return it->second;
        DegreeCohomology h;
        h.node = n;
        h.dim_space = space_dim(n);
        Node prev{n.complex, n.degree - 1};
        if (h.dim_space > 0) {
            h.dim_Z = h.dim_space - differential_rank(n);
            h.dim_B = space_dim(prev) == 0 ? 0 : differential_rank(prev);
        }
        h.dim_H = h.dim_Z - h.dim_B;
        h.reps = SparseMatrix(h.dim_space, 0);
        if (h.dim_H > 0) h.reps = representatives(n, h.dim_H);
        return nodes_.emplace(key, std::move(h)).first->second;
    }

    // Matrix of the map induced by a chain map (or an anticommuting one) on
    // cohomology, in the representative bases.
    InducedMap induced(const ChainOperator& op)
    {
        const DegreeCohomology& hx = at(op.source());
        const DegreeCohomology& hy = at(op.target());
        InducedMap out{op, SparseMatrix(hy.dim_H, hx.dim_H), 0};
        if (hx.dim_H == 0 || hy.dim_H == 0) return out;
        const Space& sx = w_.space(op.source());
        const Space& sy = w_.space(op.target());
        SparseMatrix images = sy.coordinates(op.apply_to(multiply(sx.basis, hx.reps, guard_), guard_));
        Node prev{op.target().complex, op.target().degree - 1};
        const std::size_t nb = space_dim(prev);
        SparseMatrix system = nb == 0 ? hy.reps : detail::hstack(differential(prev), hy.reps);
        auto x = solve(system, images);
        if (!x) throw std::logic_error(op.name() + " does not map cocycles to cocycles");
        out.matrix = detail::row_block(*x, nb, nb + hy.dim_H);
        out.rank = rank(out.matrix);
        return out;
    }

private:
    const Workbench& w_;
    std::size_t guard_;
    std::map<std::pair<Complex, int>, SparseMatrix> diffs_;
    std::map<std::pair<Complex, int>, std::size_t> ranks_;
    std::map<std::pair<Complex, int>, DegreeCohomology> nodes_;

    // Canonical cocycle basis, kept greedily in order when independent of the
    // coboundaries and of the earlier choices.
    SparseMatrix representatives(Node n, std::size_t expected)
    {
        Nullspace z = nullspace(differential(n));
        RowEchelon e(space_dim(n));
        Node prev{n.complex, n.degree - 1};
        if (space_dim(prev) > 0) {
            SparseMatrix bt = differential(prev).transpose();
            SparseRow row;
            for (std::size_t r = 0; r < bt.rows(); ++r) {
                bt.row(r, row);
                if (!row.empty()) e.insert(row);
            }
        }
        SparseMatrix zt = z.basis.transpose();
        std::vector<std::size_t> keep;
        SparseRow row;
        for (std::size_t r = 0; r < zt.rows() && keep.size() < expected; ++r) {
            zt.row(r, row);
            if (e.insert(row)) keep.push_back(r);
        }
        if (keep.size() != expected) throw std::logic_error("representative count mismatch at " + n.str());
        SparseMatrix::Builder b(zt.rows() == 0 ? z.basis.rows() : zt.cols(), keep.size());
        std::vector<long> slot(zt.rows(), -1);
        for (std::size_t k = 0; k < keep.size(); ++k) slot[keep[k]] = static_cast<long>(k);
        for (std::size_t r = 0; r < z.basis.rows(); ++r) {
            z.basis.for_row(r, [&](std::size_t c, const Scalar& v) {
                if (slot[c] >= 0) b.add(static_cast<std::size_t>(slot[c]), v);
            });
            b.finish_row();
        }
        return b.finish();
    }
};

struct ComplexCohomology {
    Complex complex;
    std::vector<DegreeCohomology> degrees;  // degree -1 .. cap
};

inline ComplexCohomology compute_cohomology(CohomologyEngine& eng, Complex c, int cap)
{
    ComplexCohomology out{c, {}};
    for (int n = -1; n <= cap; ++n) out.degrees.push_back(eng.at({c, n}));
    return out;
}

// Kernel = image at every node of
//   H^{q-2}(G) -S-> H^q(D) -I-> H^q(E) -B-> H^{q-1}(G) -S-> H^{q+1}(D) ...
// for q = -1 .. cap.
inline std::vector<SbiVerdict> sbi_exactness_check(CohomologyEngine& eng, int cap)
{
    const Workbench& w = eng.workbench();
    std::vector<SbiVerdict> out;
    auto node_name = [](Node n) { return "H^" + std::to_string(n.degree) + "(" + complex_name(n.complex) + ")"; };
    auto verdict = [&](Node at, const char* prop, const std::optional<ChainOperator>& in,
                       const std::optional<ChainOperator>& outgoing) {
        SbiVerdict v;
        v.node = node_name(at);
        v.proposition = prop;
        v.degree = at.degree;
        const std::size_t h = eng.at(at).dim_H;
        std::optional<InducedMap> f, g;
        if (in) f = eng.induced(*in);
        if (outgoing) g = eng.induced(*outgoing);
        v.image_dim = f ? f->rank : 0;
        v.kernel_dim = h - (g ? g->rank : 0);
        if (f && g) v.composite_zero = multiply(g->matrix, f->matrix).is_zero();
        v.equal = v.composite_zero && v.kernel_dim == v.image_dim;
        out.push_back(std::move(v));
    };
    for (int q = -1; q <= cap; ++q) {
        // ker I = im S at H^q(D)
        std::optional<ChainOperator> s_in;
        if (q - 2 >= 0) s_in = w.S(q - 2);
        verdict({Complex::D, q}, "IS", s_in, w.I(q));
        // ker B = im I at H^q(E)
        std::optional<ChainOperator> b_out;
        if (q - 1 >= 0) b_out = w.B(q - 1);
        verdict({Complex::E, q}, "BI", w.I(q), b_out);
        // ker S = im B at H^q(G)
        if (q >= 0) verdict({Complex::G, q}, "SB", w.B(q), w.S(q));
    }
    return out;
}

// S~ and R~ induce mutually inverse maps H^n(G) <-> H^{n+2}(D).
inline ShiftIsoVerdict shift_iso_check(CohomologyEngine& eng, int n)
{
    const Workbench& w = eng.workbench();
    ShiftIsoVerdict v;
    v.n = n;
    v.dim_source = eng.at({Complex::G, n}).dim_H;
    v.dim_target = eng.at({Complex::D, n + 2}).dim_H;
    InducedMap s = eng.induced(w.S(n));
    InducedMap r = eng.induced(w.R(n));
    v.RS_identity = multiply(r.matrix, s.matrix) == SparseMatrix::identity(v.dim_source);
    v.SR_identity = multiply(s.matrix, r.matrix) == SparseMatrix::identity(v.dim_target);
    return v;
}

}  // namespace cwb
