#include "swingnet/stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace swingnet {

std::string to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::AsymptoticallyStable: return "AsymptoticallyStable";
        case StabilityVerdict::MarginallyStable: return "MarginallyStable";
        case StabilityVerdict::Unstable: return "Unstable";
    }
    return "?";
}

Matrix hessian(const GridTopology& g, const Equilibrium& eq) {
    return -jacobian(g, eq.phases);
}

StabilityReport classify_stability(const Matrix& H, double zero_tol) {
    if (H.rows() != H.cols()) throw std::invalid_argument("hessian must be square");
    const int n = static_cast<int>(H.rows());
    StabilityReport report;
    if (n == 0) return report;

    Vector real_parts(n);
    Matrix vectors(n, n);  // columns are (real parts of) eigenvectors

    double scale = std::max(H.cwiseAbs().maxCoeff(), 1.0);
    bool symmetric = (H - H.transpose()).cwiseAbs().maxCoeff() < 1e-12 * scale;
    if (symmetric) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(H);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("self-adjoint eigensolver failed on the Hesse matrix");
        real_parts = es.eigenvalues();
        vectors = es.eigenvectors();
    } else {
        Eigen::EigenSolver<Matrix> es(H);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigensolver failed on the Hesse matrix");
        real_parts = es.eigenvalues().real();
        vectors = es.eigenvectors().real();
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return real_parts[a] < real_parts[b]; });

    // structural zero: eigenvector with the largest |cosine| to the ones vector
    int best = 0;
    double best_cos = -1.0;
    for (int k = 0; k < n; ++k) {
        int idx = order[k];
        double vn = vectors.col(idx).norm();
        if (vn == 0.0) continue;
        double c = std::abs(vectors.col(idx).sum()) / (vn * std::sqrt(double(n)));
        if (c > best_cos) {
            best_cos = c;
            best = k;
        }
    }

    report.eigen_real_parts.resize(n);
    for (int k = 0; k < n; ++k) report.eigen_real_parts[k] = real_parts[order[k]];
    report.structural_zero_index = best;

    double lambda2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k)
        if (k != best) lambda2 = std::min(lambda2, report.eigen_real_parts[k]);
    if (n == 1) lambda2 = 0.0;  // single oscillator: only the structural zero remains
    report.lambda2 = lambda2;

    if (lambda2 > zero_tol) report.verdict = StabilityVerdict::AsymptoticallyStable;
    else if (lambda2 < -zero_tol) report.verdict = StabilityVerdict::Unstable;
    else report.verdict = StabilityVerdict::MarginallyStable;
    return report;
}

}  // namespace swingnet
