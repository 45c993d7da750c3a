#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "dimfn/cells.hpp"

namespace dimfn {

/// Element of N u {-inf}.
class DimValue {
public:
    DimValue() = default;  // -inf
    static DimValue neg_inf() { return {}; }
    static DimValue of(int d);

    bool is_neg_inf() const { return !v_; }
    int value() const;
    /// d + i, with -inf + i = -inf.
    DimValue plus(int i) const { return v_ ? of(*v_ + i) : DimValue(); }
    std::string str() const { return v_ ? std::to_string(*v_) : "-inf"; }

    friend bool operator==(const DimValue&, const DimValue&) = default;
    friend std::strong_ordering operator<=>(const DimValue& a, const DimValue& b);

private:
    std::optional<int> v_;
};

inline DimValue max(const DimValue& a, const DimValue& b) { return a < b ? b : a; }

/// A fiber classifier plugged into the shared recursion
///   dim X = max(dim X(1) + 1, dim X(0)).
/// Copies share a memo table of computed dimensions.
class DimEngine {
public:
    enum class Kind { Top, W, I };

    static DimEngine top(const ModelId& m);
    /// dim_w^kappa on WOM(m), 1 <= kappa <= m.
    static DimEngine w(const ModelId& m, int kappa);
    /// Dim[dim_top, I] on DLO or CONCAT(m); I is a quantifier-free formula in
    /// x1 defining an infinite set.
    static DimEngine interval(const ModelId& m, const Formula& I);
    /// `top`, `w:<kappa>` or `I:<formula in x1>`.
    static DimEngine parse(std::string_view spec, const ModelId& m);

    Kind kind() const { return kind_; }
    int kappa() const { return kappa_; }
    const Formula& interval_formula() const { return interval_; }
    const ModelId& model() const { return model_; }
    std::string name() const;

    std::optional<DimValue> cached(const std::string& key) const;
    void remember(const std::string& key, DimValue d) const;

private:
    struct Memo {
        std::mutex mu;
        std::map<std::string, DimValue> table;
    };

    DimEngine(Kind k, ModelId m) : kind_(k), model_(m), memo_(std::make_shared<Memo>()) {}

    Kind kind_;
    ModelId model_;
    int kappa_ = 0;
    Formula interval_;
    std::shared_ptr<Memo> memo_;
};

/// 0 iff the fiber is a single point. Precondition: the fiber is nonempty.
int fiber_dim_top(const FiberShape& s);

/// Verdict of dim_w^kappa on a nonempty fiber: 0 iff
///   (a) there is a class part with k1 <= kappa, or
///   (b) no class part, both bounds with k2, k3 <= kappa, and f2 ~^kappa f3, or
///   (c) all three parts, k1 > kappa, k2, k3 <= kappa, f1 ~^k1 f2,
///       f1 ~^k1 f3 and f2 ~^kappa f3.
/// The certificate must fix the relations these conditions read.
int fiber_dim_w(const FiberShape& s, int kappa, const Certificate& cert);

/// Verdict of Dim[dim_top, I] on the fiber over a concrete base point: 1 iff
/// the fiber meets I in a set with nonempty interior.
int fiber_dim_I(const FiberShape& s, const Assignment& base, int n, const Formula& I, const ModelId& m);

/// X(1): base points of M^{n-1} over which the fiber of X in x_n has
/// dimension 1 under the engine. Quantifier-free, in disjunctive normal form.
Formula positive_fibers(const Formula& qf, int n, const DimEngine& e);

/// Pi(X) split into X(0) and X(1).
struct Classification {
    Formula proj;
    Formula x1;
    Formula x0;
};

Classification classify(const Formula& phi, int n, const DimEngine& e);

/// Dimension of the set defined by phi in M^n.
DimValue dim(const Formula& phi, int n, const DimEngine& e);

/// The same recursion driven by decomposition pieces and per-piece verdicts
/// read from their certificates.
DimValue dim_by_cells(const Formula& phi, int n, const DimEngine& e);

/// Projection Pi^n_1: exists x_n. phi, quantifier-free.
Formula project(const Formula& phi, int n, const ModelId& m);

}  // namespace dimfn
