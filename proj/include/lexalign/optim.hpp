#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace lexalign {

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// Per-tensor Adam moments. Vectors are handled as n-by-1 matrices.
struct AdamState {
    Eigen::MatrixXd m;
    Eigen::MatrixXd v;
    long t = 0;

    void init(Eigen::Index rows, Eigen::Index cols) {
        m = Eigen::MatrixXd::Zero(rows, cols);
        v = Eigen::MatrixXd::Zero(rows, cols);
        t = 0;
    }

    template <typename Param, typename Grad>
    void step(Param& param, const Grad& grad, const AdamConfig& config) {
        ++t;
        m = config.beta1 * m + (1.0 - config.beta1) * grad;
        v = (config.beta2 * v.array() + (1.0 - config.beta2) * grad.array().square()).matrix();
        const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
        const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
        const Eigen::ArrayXXd m_hat = m.array() / bias1;
        const Eigen::ArrayXXd v_hat = v.array() / bias2;
        param -= (config.learning_rate * m_hat / (v_hat.sqrt() + config.epsilon)).matrix();
    }
};

struct AdamScalarState {
    double m = 0.0;
    double v = 0.0;
    long t = 0;

    void step(double& param, double grad, const AdamConfig& config) {
        ++t;
        m = config.beta1 * m + (1.0 - config.beta1) * grad;
        v = config.beta2 * v + (1.0 - config.beta2) * grad * grad;
        const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(t));
        const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(t));
        param -= config.learning_rate * (m / bias1) / (std::sqrt(v / bias2) + config.epsilon);
    }
};

} // namespace lexalign
