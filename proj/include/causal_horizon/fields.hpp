#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "causal_horizon/dual.hpp"
#include "causal_horizon/rng.hpp"

namespace ch {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class VelocityField {
public:
    virtual ~VelocityField() = default;

    virtual int dim() const = 0;
    virtual std::string kind() const = 0;
    virtual bool has_exact_divergence() const { return false; }
    virtual bool has_analytic_jvp() const { return false; }

    virtual Vec eval(const Vec& x, double t) const = 0;
    // Jacobian of eval in x applied to v.
    virtual Vec jvp(const Vec& x, double t, const Vec& v) const = 0;
    // Tr(grad u); default sums the basis JVP components.
    virtual double divergence(const Vec& x, double t) const;

    Mat jacobian(const Vec& x, double t) const;
};

using FieldPtr = std::shared_ptr<const VelocityField>;

Vec jvp(const VelocityField& f, const Vec& x, double t, const Vec& v);
double exact_divergence(const VelocityField& f, const Vec& x, double t);
double basis_divergence(const VelocityField& f, const Vec& x, double t);

// u = A x + b.
class LinearField : public VelocityField {
public:
    explicit LinearField(Mat A, std::optional<Vec> b = std::nullopt);
    int dim() const override { return static_cast<int>(A_.rows()); }
    std::string kind() const override { return "linear"; }
    bool has_exact_divergence() const override { return true; }
    bool has_analytic_jvp() const override { return true; }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;
    double divergence(const Vec& x, double t) const override;

private:
    Mat A_;
    Vec b_;
};

// u = [-A tanh(k x0) (t + tau), D]. make_canyon uses A=6, k=0.1, tau=0.1.
class CanyonField : public VelocityField {
public:
    CanyonField(double amplitude, double sharpness, double tau, double D);
    int dim() const override { return 2; }
    std::string kind() const override { return "canyon"; }
    bool has_exact_divergence() const override { return true; }
    bool has_analytic_jvp() const override { return true; }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;
    double divergence(const Vec& x, double t) const override;

    double amplitude() const { return A_; }
    double sharpness() const { return k_; }

private:
    double A_, k_, tau_, D_;
};

FieldPtr make_canyon(double D);
FieldPtr make_canyon_class(double amplitude, double sharpness, double tau, double D);

// Exact inviscid Burgers solution with linear data contracting toward c(t) = c0 + D t e1:
// u = -(lambda0/n)(x - c(t))/(1 - lambda0 t/n) + D e1, divergence -lambda0/(1 - lambda0 t/n).
class TearingField : public VelocityField {
public:
    TearingField(int n, double lambda0, double D, std::optional<Vec> c0 = std::nullopt);
    int dim() const override { return n_; }
    std::string kind() const override { return "tearing"; }
    bool has_exact_divergence() const override { return true; }
    bool has_analytic_jvp() const override { return true; }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;
    double divergence(const Vec& x, double t) const override;

    double lambda0() const { return lambda0_; }
    double critical_time() const { return n_ / lambda0_; }
    Vec center(double t) const;

private:
    void check(double t) const;
    int n_;
    double lambda0_, D_;
    Vec c0_;
};

// lambda0 from initial_contraction_bound; kappa and density_ratio default to the flat, uniform case.
std::shared_ptr<const TearingField> make_tearing(int n, double D, double sigma, double Delta,
                                                 double kappa = 0.0, double density_ratio = 1.0);
// Tearing field with the trace contraction rate given directly.
std::shared_ptr<const TearingField> make_tearing_rate(int n, double lambda0, double D,
                                                      std::optional<Vec> c0 = std::nullopt);

struct PointCloud {
    std::vector<Vec> points;
    double h = 0.0;
    std::vector<std::string> labels;

    int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
    void validate() const;
};

// h = rms(per-dimension sample std) * m^(-1/(dim+4)).
double silverman_bandwidth(const std::vector<Vec>& points);

// u = D (target - x)/|target - x| (zero within stop_radius of target) + beta grad log rho_hat.
class KdeScoreField : public VelocityField {
public:
    KdeScoreField(PointCloud cloud, Vec target, double beta, double D, double stop_radius);
    int dim() const override { return cloud_.dim(); }
    std::string kind() const override { return "kde_score"; }
    bool has_exact_divergence() const override { return true; }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;
    double divergence(const Vec& x, double t) const override;

    Vec score(const Vec& x) const;
    Mat score_jacobian(const Vec& x) const;
    double log_density(const Vec& x) const;
    const PointCloud& cloud() const { return cloud_; }
    const Vec& target() const { return target_; }
    double beta() const { return beta_; }

private:
    template <class S>
    std::vector<S> eval_t(const std::vector<S>& x) const;

    PointCloud cloud_;
    Vec target_;
    double beta_, D_, stop_;
};

std::shared_ptr<const KdeScoreField> make_kde_score(const PointCloud& cloud, const Vec& target,
                                                    double beta, double D, double stop_radius = 0.1);

struct TrainingSpec {
    FieldPtr reference;
    // Draws a training state at time t from the factual support.
    std::function<Vec(double, Rng&)> support;
    double t_lo = 0.0;
    double t_hi = 1.0;
    double learning_rate = 1e-3;
    int epochs = 1000;
    int samples = 256;
};

struct MlpSpec {
    int dim = 2;
    int width = 128;
    std::optional<TrainingSpec> training;
};

struct TrainingReport {
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int epochs = 0;
    double reduction() const { return 1.0 - final_loss / initial_loss; }
};

// tanh network (dim+1) -> width -> width -> dim with time as the appended input.
class MlpField : public VelocityField {
public:
    MlpField(int dim, int width, std::uint64_t seed);
    int dim() const override { return dim_; }
    std::string kind() const override { return "mlp"; }
    bool has_exact_divergence() const override { return true; }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;
    // Pushes all n basis tangents through the network at once.
    double divergence(const Vec& x, double t) const override;

    TrainingReport train(const TrainingSpec& spec, std::uint64_t seed);
    double loss_on(const Mat& inputs, const Mat& targets) const;
    const std::optional<TrainingReport>& training_report() const { return report_; }
    const std::vector<Mat>& weights() const { return W_; }
    const std::vector<Vec>& biases() const { return b_; }

private:
    Vec input(const Vec& x, double t) const;
    int dim_, width_;
    std::vector<Mat> W_;
    std::vector<Vec> b_;
    std::optional<TrainingReport> report_;
};

std::shared_ptr<const MlpField> make_mlp(const MlpSpec& spec, std::uint64_t seed);

// Callable written once over dual numbers; eval and JVP reuse it.
using DualMap = std::function<std::vector<Dual>(const std::vector<Dual>&, double)>;

class CustomField : public VelocityField {
public:
    CustomField(int dim, DualMap f, std::string name = "custom");
    int dim() const override { return dim_; }
    std::string kind() const override { return "custom"; }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;

private:
    int dim_;
    DualMap f_;
    std::string name_;
};

class SumField : public VelocityField {
public:
    SumField(FieldPtr a, FieldPtr b);
    int dim() const override { return a_->dim(); }
    std::string kind() const override { return a_->kind() + "+" + b_->kind(); }
    bool has_exact_divergence() const override {
        return a_->has_exact_divergence() && b_->has_exact_divergence();
    }
    Vec eval(const Vec& x, double t) const override;
    Vec jvp(const Vec& x, double t, const Vec& v) const override;
    double divergence(const Vec& x, double t) const override;

private:
    FieldPtr a_, b_;
};

// Central finite differences with step 1e-5 (1 + |x|).
Vec finite_difference_jvp(const VelocityField& f, const Vec& x, double t, const Vec& v);

}  // namespace ch
