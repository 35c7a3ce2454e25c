#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "winglock/error.hpp"

namespace winglock {

// Dense dictionary simplex: maximize c.x subject to A x <= b, x >= 0.
// Deterministic pivoting (most negative reduced cost, index tie-break) with an
// iteration cap; a handful of variables and a few hundred rows is the target.
class DenseSimplex {
public:
    enum class Status { Optimal, Infeasible, Unbounded };

    DenseSimplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                 const std::vector<double>& c)
        : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), N_(n_ + 1), B_(m_),
          D_(static_cast<std::size_t>(m_ + 2), std::vector<double>(static_cast<std::size_t>(n_ + 2))) {
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) D(i, j) = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            B_[static_cast<std::size_t>(i)] = n_ + i;
            D(i, n_) = -1.0;
            D(i, n_ + 1) = b[static_cast<std::size_t>(i)];
        }
        for (int j = 0; j < n_; ++j) {
            N_[static_cast<std::size_t>(j)] = j;
            D(m_, j) = -c[static_cast<std::size_t>(j)];
        }
        N_[static_cast<std::size_t>(n_)] = -1;
        D(m_ + 1, n_) = 1.0;
    }

    // Returns the optimum; x receives the maximizer. Status reports
    // infeasible/unbounded instead of a value.
    Status solve(std::vector<double>& x, double& value) {
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (D(i, n_ + 1) < D(r, n_ + 1)) r = i;
        if (D(r, n_ + 1) < -kEps) {
            pivot(r, n_);
            if (!run(1) || D(m_ + 1, n_ + 1) < -kEps) return Status::Infeasible;
            for (int i = 0; i < m_; ++i) {
                if (B_[static_cast<std::size_t>(i)] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j)
                    if (better(i, j, s)) s = j;
                pivot(i, s);
            }
        }
        bool bounded = run(2);
        x.assign(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < m_; ++i)
            if (B_[static_cast<std::size_t>(i)] >= 0 && B_[static_cast<std::size_t>(i)] < n_)
                x[static_cast<std::size_t>(B_[static_cast<std::size_t>(i)])] = D(i, n_ + 1);
        if (!bounded) return Status::Unbounded;
        value = D(m_, n_ + 1);
        return Status::Optimal;
    }

private:
    static constexpr double kEps = 1e-9;
    static constexpr int kMaxPivots = 20000;

    int m_, n_;
    std::vector<int> N_, B_;
    std::vector<std::vector<double>> D_;
    int pivots_ = 0;

    double& D(int i, int j) { return D_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    bool better(int row, int j, int s) {
        double a = D(row, j), b = D(row, s);
        if (a != b) return a < b;
        return N_[static_cast<std::size_t>(j)] < N_[static_cast<std::size_t>(s)];
    }

    void pivot(int r, int s) {
        if (++pivots_ > kMaxPivots)
            throw Error(Errc::SolverFailure, "simplex exceeded the pivot budget");
        auto& a = D_[static_cast<std::size_t>(r)];
        double inv = 1.0 / a[static_cast<std::size_t>(s)];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r || std::abs(D(i, s)) < 1e-12) continue;
            auto& row = D_[static_cast<std::size_t>(i)];
            double f = row[static_cast<std::size_t>(s)] * inv;
            for (int j = 0; j < n_ + 2; ++j) row[static_cast<std::size_t>(j)] -= a[static_cast<std::size_t>(j)] * f;
            row[static_cast<std::size_t>(s)] = a[static_cast<std::size_t>(s)] * f;
        }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) D(r, j) *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) D(i, s) *= -inv;
        D(r, s) = inv;
        std::swap(B_[static_cast<std::size_t>(r)], N_[static_cast<std::size_t>(s)]);
    }

    bool run(int phase) {
        int x = m_ + phase - 1;
        while (true) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (phase == 2 && N_[static_cast<std::size_t>(j)] == -1) continue;
                if (s == -1 || better(x, j, s)) s = j;
            }
            if (D(x, s) > -kEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (D(i, s) < kEps) continue;
                if (r == -1) {
                    r = i;
                    continue;
                }
                double lhs = D(i, n_ + 1) * D(r, s), rhs = D(r, n_ + 1) * D(i, s);
                if (lhs != rhs ? lhs < rhs
                               : B_[static_cast<std::size_t>(i)] < B_[static_cast<std::size_t>(r)])
                    r = i;
            }
            if (r == -1) return false;  // unbounded in this direction
            pivot(r, s);
        }
    }
};

// Convenience wrapper: maximize c.x s.t. A x <= b, x >= 0.
struct LpSolution {
    DenseSimplex::Status status;
    double value = 0.0;
    std::vector<double> x;
};

inline LpSolution lp_maximize(const std::vector<std::vector<double>>& A,
                              const std::vector<double>& b, const std::vector<double>& c) {
    DenseSimplex s(A, b, c);
    LpSolution out;
    out.status = s.solve(out.x, out.value);
    return out;
}

}  // namespace winglock
