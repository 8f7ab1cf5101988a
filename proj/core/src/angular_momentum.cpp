#include "dicke/angular_momentum.hpp"

#include "dicke/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// One (a, S) tower while coupling qubits left to right. columns(:, k) is
// |S, M = -S + k> on the product space of the qubits coupled so far.
struct Tower {
    std::vector<int> path;
    int twice_s = 0;
    RealMatrix columns;
};

void require_qubits(int n_qubits, int max_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(max_qubits) + "], got " +
                          std::to_string(n_qubits));
    }
}

}  // namespace

DegeneracyTable degeneracy(int n_qubits) {
    require_qubits(n_qubits, 30);
    DegeneracyTable t;
    t.n_qubits = n_qubits;
    // (2S+1) N! / ((N/2+S+1)! (N/2-S)!) = (2S+1) C(N+1, k) / (N+1), k = N/2 - S.
    for (int twice_s = n_qubits % 2; twice_s <= n_qubits; twice_s += 2) {
        const int k = (n_qubits - twice_s) / 2;
        t.d_s[twice_s] = static_cast<std::uint64_t>(twice_s + 1) * binomial(n_qubits + 1, k) /
                         static_cast<std::uint64_t>(n_qubits + 1);
    }
    t.n_ss = binomial(2 * n_qubits, n_qubits) / static_cast<std::uint64_t>(n_qubits + 1);
    return t;
}

DegeneracyTable count_coupling_paths(int n_qubits) {
    require_qubits(n_qubits, 30);
    // paths[2S] = number of intermediate-spin sequences ending at S.
    std::map<int, std::uint64_t> paths{{1, 1}};
    for (int k = 2; k <= n_qubits; ++k) {
        std::map<int, std::uint64_t> next;
        for (const auto& [twice_j, count] : paths) {
            next[twice_j + 1] += count;
            if (twice_j > 0) next[twice_j - 1] += count;
        }
        paths = std::move(next);
    }
    DegeneracyTable t;
    t.n_qubits = n_qubits;
    t.d_s = paths;
    for (const auto& [twice_s, d] : paths) t.n_ss += d * d;
    return t;
}

AMBasis build_basis(int n_qubits) {
    require_qubits(n_qubits, 8);

    // Qubit 0 alone: |1/2, -1/2> = |0>, |1/2, +1/2> = |1>.
    std::vector<Tower> towers{{{}, 1, RealMatrix::Identity(2, 2)}};

    for (int k = 1; k < n_qubits; ++k) {
        std::vector<Tower> next;
        for (const Tower& t : towers) {
            const int j1 = t.twice_s;
            const Index old_dim = t.columns.rows();
            for (int twice_j : {j1 - 1, j1 + 1}) {
                if (twice_j < 0) continue;
                Tower out;
                out.path = t.path;
                if (k >= 2) out.path.push_back(j1);
                out.twice_s = twice_j;
                out.columns = RealMatrix::Zero(2 * old_dim, twice_j + 1);
                const double norm = 2.0 * (j1 + 1);
                for (int col = 0; col <= twice_j; ++col) {
                    const int twice_m = -twice_j + 2 * col;
                    double c_up = 0.0;    // new qubit excited, m2 = +1/2
                    double c_down = 0.0;  // new qubit ground, m2 = -1/2
                    if (twice_j == j1 + 1) {
                        c_up = std::sqrt((j1 + twice_m + 1) / norm);
                        c_down = std::sqrt((j1 - twice_m + 1) / norm);
                    } else {
                        c_up = -std::sqrt((j1 - twice_m + 1) / norm);
                        c_down = std::sqrt((j1 + twice_m + 1) / norm);
                    }
                    // |j1, M - m2> is column (M - m2 + j1) / 2 of the parent tower.
                    const int up_m = twice_m - 1;
                    const int down_m = twice_m + 1;
                    for (Index i = 0; i < old_dim; ++i) {
                        double v = 0.0;
                        if (std::abs(up_m) <= j1 && c_up != 0.0) {
                            v = c_up * t.columns(i, (up_m + j1) / 2);
                            out.columns(2 * i + 1, col) += v;
                        }
                        if (std::abs(down_m) <= j1 && c_down != 0.0) {
                            v = c_down * t.columns(i, (down_m + j1) / 2);
                            out.columns(2 * i, col) += v;
                        }
                    }
                }
                next.push_back(std::move(out));
            }
        }
        towers = std::move(next);
    }

    std::sort(towers.begin(), towers.end(), [](const Tower& x, const Tower& y) {
        if (x.twice_s != y.twice_s) return x.twice_s < y.twice_s;
        return x.path < y.path;
    });

    AMBasis basis;
    basis.n_qubits = n_qubits;
    basis.degeneracy = degeneracy(n_qubits);
    const Index dim = Index{1} << n_qubits;
    basis.transform = DenseOperator::Zero(dim, dim);
    int a = 0;
    for (std::size_t i = 0; i < towers.size(); ++i) {
        if (i > 0 && towers[i].twice_s != towers[i - 1].twice_s) a = 0;
        const Tower& t = towers[i];
        for (int col = 0; col <= t.twice_s; ++col) {
            const auto row = static_cast<Index>(basis.states.size());
            basis.transform.row(row) = t.columns.col(col).transpose().cast<Complex>();
            basis.states.push_back({t.path, t.twice_s, -t.twice_s + 2 * col, a});
        }
        ++a;
    }
    return basis;
}

Index AMBasis::index_of(int twice_s, int a, int twice_m) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        if (s.twice_s == twice_s && s.coupling_index == a && s.twice_m == twice_m) {
            return static_cast<Index>(i);
        }
    }
    throw std::out_of_range("no basis state with 2S=" + std::to_string(twice_s) +
                            ", a=" + std::to_string(a) + ", 2M=" + std::to_string(twice_m));
}

DenseOperator AMBasis::tower(int twice_s, int a) const {
    const Index first = index_of(twice_s, a, -twice_s);
    return transform.middleRows(first, twice_s + 1).adjoint();
}

DenseOperator smax_projector(const AMBasis& basis) {
    const Index dim = basis.transform.rows();
    DenseOperator p = DenseOperator::Zero(dim, dim);
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
        if (basis.states[i].twice_s != basis.n_qubits) continue;
        const auto row = basis.transform.row(static_cast<Index>(i));
        p += row.adjoint() * row;
    }
    return p;
}

RealVector ladder_factors(int twice_s) {
    RealVector a(twice_s + 1);
    const double s = twice_s / 2.0;
    for (int k = 0; k <= twice_s; ++k) {
        const double m = -s + k;
        a(k) = std::sqrt(std::max(0.0, s * (s + 1) - m * (m + 1)));
    }
    return a;
}

BlockSteadyState block_steady_state(int twice_s, double omega, double delta, double gamma) {
    if (twice_s < 0) throw ConfigError("total spin must be >= 0");
    if (!(omega > 0.0) || !(gamma > 0.0)) throw ConfigError("block steady state needs omega, gamma > 0");

    const Index n = twice_s + 1;
    const RealVector ladder = ladder_factors(twice_s);
    ComplexMatrix jp = ComplexMatrix::Zero(n, n);
    ComplexMatrix jz = ComplexMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) {
        jz(k, k) = -twice_s / 2.0 + static_cast<double>(k);
        if (k + 1 < n) jp(k + 1, k) = ladder(k);
    }
    const ComplexMatrix jm = jp.adjoint();
    const ComplexMatrix h = 0.5 * omega * (jp + jm) + delta * jz;
    const ComplexMatrix jpjm = jp * jm;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    // Column stacking: vec(A rho B) = (B^T kron A) vec(rho).
    auto kron = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Index i = 0; i < x.rows(); ++i)
            for (Index j = 0; j < x.cols(); ++j)
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return out;
    };
    const ComplexMatrix super = -kI * (kron(id, h) - kron(h.transpose(), id)) +
                                gamma * (kron(jm.conjugate(), jm) - 0.5 * kron(id, jpjm) -
                                         0.5 * kron(jpjm.transpose(), id));

    Eigen::JacobiSVD<ComplexMatrix> svd(super, Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sv(0));
    Index null_dim = 0;
    for (Index k = 0; k < sv.size(); ++k) {
        if (sv(k) < tol) ++null_dim;
    }
    if (null_dim != 1) {
        throw BlockDegeneracyError("S-block steady state has null dimension " +
                                   std::to_string(null_dim) + " for 2S=" + std::to_string(twice_s));
    }
    const ComplexVector v = svd.matrixV().col(n * n - 1);
    ComplexMatrix rho = Eigen::Map<const ComplexMatrix>(v.data(), n, n);
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return {twice_s, rho, ladder};
}

}  // namespace dicke
