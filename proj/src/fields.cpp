#include "causal_horizon/fields.hpp"

#include <cmath>
#include <numbers>

#include "causal_horizon/bounds.hpp"
#include "causal_horizon/errors.hpp"

namespace ch {

double VelocityField::divergence(const Vec& x, double t) const { return basis_divergence(*this, x, t); }

Mat VelocityField::jacobian(const Vec& x, double t) const {
    const int n = dim();
    Mat J(n, n);
    Vec e = Vec::Zero(n);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        J.col(j) = jvp(x, t, e);
        e[j] = 0.0;
    }
    return J;
}

Vec jvp(const VelocityField& f, const Vec& x, double t, const Vec& v) { return f.jvp(x, t, v); }

double exact_divergence(const VelocityField& f, const Vec& x, double t) { return f.divergence(x, t); }

double basis_divergence(const VelocityField& f, const Vec& x, double t) {
    const int n = f.dim();
    Vec e = Vec::Zero(n);
    double tr = 0.0;
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        tr += f.jvp(x, t, e)[j];
        e[j] = 0.0;
    }
    return tr;
}

Vec finite_difference_jvp(const VelocityField& f, const Vec& x, double t, const Vec& v) {
    double h = 1e-5 * (1.0 + x.norm());
    return (f.eval(x + h * v, t) - f.eval(x - h * v, t)) / (2.0 * h);
}

// ---- linear ----

LinearField::LinearField(Mat A, std::optional<Vec> b) : A_(std::move(A)) {
    if (A_.rows() != A_.cols()) throw DomainError("linear field: A must be square");
    b_ = b ? *b : Vec::Zero(A_.rows());
}

Vec LinearField::eval(const Vec& x, double) const { return A_ * x + b_; }
Vec LinearField::jvp(const Vec&, double, const Vec& v) const { return A_ * v; }
double LinearField::divergence(const Vec&, double) const { return A_.trace(); }

// ---- canyon ----

CanyonField::CanyonField(double amplitude, double sharpness, double tau, double D)
    : A_(amplitude), k_(sharpness), tau_(tau), D_(D) {}

Vec CanyonField::eval(const Vec& x, double t) const {
    Vec u(2);
    u << -A_ * std::tanh(k_ * x[0]) * (t + tau_), D_;
    return u;
}

Vec CanyonField::jvp(const Vec& x, double t, const Vec& v) const {
    Vec out(2);
    out << divergence(x, t) * v[0], 0.0;
    return out;
}

double CanyonField::divergence(const Vec& x, double t) const {
    double c = std::cosh(k_ * x[0]);
    return -A_ * k_ * (t + tau_) / (c * c);
}

FieldPtr make_canyon(double D) {
    if (!(D > 0)) throw DomainError("make_canyon: D must be > 0");
    return std::make_shared<CanyonField>(6.0, 0.1, 0.1, D);
}

FieldPtr make_canyon_class(double amplitude, double sharpness, double tau, double D) {
    return std::make_shared<CanyonField>(amplitude, sharpness, tau, D);
}

// ---- tearing ----

TearingField::TearingField(int n, double lambda0, double D, std::optional<Vec> c0)
    : n_(n), lambda0_(lambda0), D_(D) {
    if (n < 1) throw DomainError("tearing field: n must be >= 1");
    if (!(lambda0 > 0)) throw DomainError("tearing field: lambda0 must be > 0");
    c0_ = c0 ? *c0 : Vec::Zero(n);
    if (c0_.size() != n) throw DomainError("tearing field: c0 has wrong dimension");
}

void TearingField::check(double t) const {
    if (t >= critical_time()) throw PastSingularityError("tearing field evaluated at t >= n/lambda0");
}

Vec TearingField::center(double t) const {
    Vec c = c0_;
    c[0] += D_ * t;
    return c;
}

Vec TearingField::eval(const Vec& x, double t) const {
    check(t);
    double g = -(lambda0_ / n_) / (1.0 - lambda0_ * t / n_);
    Vec u = g * (x - center(t));
    u[0] += D_;
    return u;
}

Vec TearingField::jvp(const Vec&, double t, const Vec& v) const {
    check(t);
    return (-(lambda0_ / n_) / (1.0 - lambda0_ * t / n_)) * v;
}

double TearingField::divergence(const Vec&, double t) const {
    check(t);
    return -lambda0_ / (1.0 - lambda0_ * t / n_);
}

std::shared_ptr<const TearingField> make_tearing(int n, double D, double sigma, double Delta,
                                                 double kappa, double density_ratio) {
    if (n < 1 || !(sigma > 0) || !(Delta > 0) || D < 0)
        throw DomainError("make_tearing: inputs must be positive");
    GeometryParams p;
    p.n = n;
    p.D = D;
    p.sigma = sigma;
    p.Delta = Delta;
    p.kappa = kappa;
    p.density_ratio = density_ratio;
    double lambda0 = initial_contraction_bound(p);
    if (!(lambda0 > 0)) throw DomainError("make_tearing: contraction bound is not positive");
    return std::make_shared<TearingField>(n, lambda0, D);
}

std::shared_ptr<const TearingField> make_tearing_rate(int n, double lambda0, double D, std::optional<Vec> c0) {
    return std::make_shared<TearingField>(n, lambda0, D, std::move(c0));
}

// ---- kde score ----

void PointCloud::validate() const {
    if (points.size() < 2) throw DomainError("point cloud needs at least 2 points");
    const auto d = points.front().size();
    for (const auto& p : points) {
        if (p.size() != d) throw DomainError("point cloud has mixed dimensions");
        if (!p.allFinite()) throw DomainError("point cloud has non-finite coordinates");
    }
    if (!(h > 0)) throw DomainError("point cloud bandwidth must be > 0");
}

double silverman_bandwidth(const std::vector<Vec>& points) {
    if (points.size() < 2) throw DomainError("silverman_bandwidth: need at least 2 points");
    const int d = static_cast<int>(points.front().size());
    const double m = static_cast<double>(points.size());
    Vec mean = Vec::Zero(d);
    for (const auto& p : points) mean += p;
    mean /= m;
    Vec var = Vec::Zero(d);
    for (const auto& p : points) var += (p - mean).cwiseAbs2();
    var /= (m - 1.0);
    double spread = std::sqrt(var.mean());
    return spread * std::pow(m, -1.0 / (d + 4.0));
}

KdeScoreField::KdeScoreField(PointCloud cloud, Vec target, double beta, double D, double stop_radius)
    : cloud_(std::move(cloud)), target_(std::move(target)), beta_(beta), D_(D), stop_(stop_radius) {
    if (cloud_.points.empty()) throw DomainError("make_kde_score: empty cloud");
    if (cloud_.h <= 0 && cloud_.points.size() >= 2) cloud_.h = silverman_bandwidth(cloud_.points);
    if (!(cloud_.h > 0)) throw DomainError("make_kde_score: bandwidth must be > 0");
    if (beta_ < 0) throw DomainError("make_kde_score: beta must be >= 0");
    if (target_.size() != cloud_.dim()) throw DomainError("make_kde_score: target has wrong dimension");
}

template <class S>
std::vector<S> KdeScoreField::eval_t(const std::vector<S>& x) const {
    using std::exp;
    using std::sqrt;
    const int d = dim();
    const double h2 = cloud_.h * cloud_.h;
    std::vector<S> out(d, S(0.0));

    if (beta_ != 0.0) {
        std::vector<S> logw(cloud_.points.size());
        double mx = -INFINITY;
        for (std::size_t i = 0; i < cloud_.points.size(); ++i) {
            S r2(0.0);
            for (int j = 0; j < d; ++j) {
                S dj = S(cloud_.points[i][j]) - x[j];
                r2 += dj * dj;
            }
            logw[i] = -r2 / S(2.0 * h2);
            mx = std::max(mx, value_of(logw[i]));
        }
        S wsum(0.0);
        std::vector<S> acc(d, S(0.0));
        for (std::size_t i = 0; i < cloud_.points.size(); ++i) {
            S w = exp(logw[i] - S(mx));
            wsum += w;
            for (int j = 0; j < d; ++j) acc[j] += w * (S(cloud_.points[i][j]) - x[j]);
        }
        for (int j = 0; j < d; ++j) out[j] = S(beta_) * acc[j] / (wsum * S(h2));
    }

    if (D_ != 0.0) {
        std::vector<S> r(d);
        S n2(0.0);
        for (int j = 0; j < d; ++j) {
            r[j] = S(target_[j]) - x[j];
            n2 += r[j] * r[j];
        }
        if (std::sqrt(value_of(n2)) > stop_) {
            S nr = sqrt(n2);
            for (int j = 0; j < d; ++j) out[j] += S(D_) * r[j] / nr;
        }
    }
    return out;
}

Vec KdeScoreField::eval(const Vec& x, double) const {
    std::vector<double> xs(x.data(), x.data() + x.size());
    auto u = eval_t(xs);
    return Eigen::Map<Vec>(u.data(), static_cast<Eigen::Index>(u.size()));
}

Vec KdeScoreField::jvp(const Vec& x, double, const Vec& v) const {
    std::vector<Dual> xs(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) xs[j] = Dual(x[j], v[j]);
    auto u = eval_t(xs);
    Vec out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j].d;
    return out;
}

namespace {

struct KdeMoments {
    Vec mu;
    Mat second;
};

KdeMoments kde_moments(const PointCloud& c, const Vec& x) {
    const int d = c.dim();
    const double h2 = c.h * c.h;
    std::vector<double> logw(c.points.size());
    double mx = -INFINITY;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        logw[i] = -(c.points[i] - x).squaredNorm() / (2.0 * h2);
        mx = std::max(mx, logw[i]);
    }
    double ws = 0.0;
    Vec mu = Vec::Zero(d);
    Mat S = Mat::Zero(d, d);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        double w = std::exp(logw[i] - mx);
        Vec r = c.points[i] - x;
        ws += w;
        mu += w * r;
        S += w * r * r.transpose();
    }
    return {mu / ws, S / ws};
}

}  // namespace

Vec KdeScoreField::score(const Vec& x) const {
    return kde_moments(cloud_, x).mu / (cloud_.h * cloud_.h);
}

Mat KdeScoreField::score_jacobian(const Vec& x) const {
    auto m = kde_moments(cloud_, x);
    const double h2 = cloud_.h * cloud_.h;
    Mat cov = m.second - m.mu * m.mu.transpose();
    return cov / (h2 * h2) - Mat::Identity(dim(), dim()) / h2;
}

double KdeScoreField::log_density(const Vec& x) const {
    const double h2 = cloud_.h * cloud_.h;
    double mx = -INFINITY;
    std::vector<double> lw(cloud_.points.size());
    for (std::size_t i = 0; i < lw.size(); ++i) {
        lw[i] = -(cloud_.points[i] - x).squaredNorm() / (2.0 * h2);
        mx = std::max(mx, lw[i]);
    }
    double s = 0.0;
    for (double v : lw) s += std::exp(v - mx);
    return mx + std::log(s / lw.size()) - 0.5 * dim() * std::log(2.0 * std::numbers::pi * h2);
}

double KdeScoreField::divergence(const Vec& x, double) const {
    double tr = 0.0;
    if (beta_ != 0.0) tr += beta_ * score_jacobian(x).trace();
    if (D_ != 0.0) {
        double r = (target_ - x).norm();
        if (r > stop_) tr += -D_ * (dim() - 1) / r;
    }
    return tr;
}

std::shared_ptr<const KdeScoreField> make_kde_score(const PointCloud& cloud, const Vec& target, double beta,
                                                    double D, double stop_radius) {
    return std::make_shared<KdeScoreField>(cloud, target, beta, D, stop_radius);
}

// ---- mlp ----

MlpField::MlpField(int dim, int width, std::uint64_t seed) : dim_(dim), width_(width) {
    if (dim < 1 || width < 1) throw DomainError("mlp: dim and width must be >= 1");
    Rng rng = make_stream(seed, 0, Lane::init);
    const int sizes[4] = {dim + 1, width, width, dim};
    for (int l = 0; l < 3; ++l) {
        std::normal_distribution<double> nd(0.0, std::sqrt(2.0 / (sizes[l] + sizes[l + 1])));
        Mat W(sizes[l + 1], sizes[l]);
        for (Eigen::Index j = 0; j < W.cols(); ++j)
            for (Eigen::Index i = 0; i < W.rows(); ++i) W(i, j) = nd(rng);
        W_.push_back(std::move(W));
        b_.push_back(Vec::Zero(sizes[l + 1]));
    }
}

Vec MlpField::input(const Vec& x, double t) const {
    Vec in(dim_ + 1);
    in.head(dim_) = x;
    in[dim_] = t;
    return in;
}

Vec MlpField::eval(const Vec& x, double t) const {
    Vec a1 = (W_[0] * input(x, t) + b_[0]).array().tanh().matrix();
    Vec a2 = (W_[1] * a1 + b_[1]).array().tanh().matrix();
    return W_[2] * a2 + b_[2];
}

Vec MlpField::jvp(const Vec& x, double t, const Vec& v) const {
    Vec a1 = (W_[0] * input(x, t) + b_[0]).array().tanh().matrix();
    Vec t1 = (1.0 - a1.array().square()).matrix().cwiseProduct(W_[0].leftCols(dim_) * v);
    Vec a2 = (W_[1] * a1 + b_[1]).array().tanh().matrix();
    Vec t2 = (1.0 - a2.array().square()).matrix().cwiseProduct(W_[1] * t1);
    return W_[2] * t2;
}

double MlpField::divergence(const Vec& x, double t) const {
    Vec a1 = (W_[0] * input(x, t) + b_[0]).array().tanh().matrix();
    Vec a2 = (W_[1] * a1 + b_[1]).array().tanh().matrix();
    Mat T1 = (1.0 - a1.array().square()).matrix().asDiagonal() * W_[0].leftCols(dim_);
    Mat T2 = (1.0 - a2.array().square()).matrix().asDiagonal() * (W_[1] * T1);
    return (W_[2].array() * T2.transpose().array()).sum();
}

double MlpField::loss_on(const Mat& X, const Mat& Y) const {
    Mat A1 = ((W_[0] * X).colwise() + b_[0]).array().tanh().matrix();
    Mat A2 = ((W_[1] * A1).colwise() + b_[1]).array().tanh().matrix();
    Mat out = (W_[2] * A2).colwise() + b_[2];
    return (out - Y).array().square().mean();
}

TrainingReport MlpField::train(const TrainingSpec& spec, std::uint64_t seed) {
    if (!spec.reference || !spec.support) throw DomainError("mlp training needs a reference field and support");
    if (spec.reference->dim() != dim_) throw DomainError("mlp training: reference dimension mismatch");
    Rng rng = make_stream(seed, 0, Lane::data);
    std::uniform_real_distribution<double> ut(spec.t_lo, spec.t_hi);
    const int S = spec.samples;
    Mat X(dim_ + 1, S), Y(dim_, S);
    for (int s = 0; s < S; ++s) {
        double t = ut(rng);
        Vec x = spec.support(t, rng);
        X.col(s) = input(x, t);
        Y.col(s) = spec.reference->eval(x, t);
    }

    std::vector<Mat> mW, vW;
    std::vector<Vec> mb, vb;
    for (int l = 0; l < 3; ++l) {
        mW.push_back(Mat::Zero(W_[l].rows(), W_[l].cols()));
        vW.push_back(Mat::Zero(W_[l].rows(), W_[l].cols()));
        mb.push_back(Vec::Zero(b_[l].size()));
        vb.push_back(Vec::Zero(b_[l].size()));
    }
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;

    TrainingReport rep;
    rep.initial_loss = loss_on(X, Y);
    for (int e = 1; e <= spec.epochs; ++e) {
        Mat A1 = ((W_[0] * X).colwise() + b_[0]).array().tanh().matrix();
        Mat A2 = ((W_[1] * A1).colwise() + b_[1]).array().tanh().matrix();
        Mat out = (W_[2] * A2).colwise() + b_[2];
        Mat dOut = (2.0 / static_cast<double>(dim_ * S)) * (out - Y);
        Mat dZ2 = (W_[2].transpose() * dOut).array() * (1.0 - A2.array().square());
        Mat dZ1 = (W_[1].transpose() * dZ2).array() * (1.0 - A1.array().square());
        std::vector<Mat> gW = {dZ1 * X.transpose(), dZ2 * A1.transpose(), dOut * A2.transpose()};
        std::vector<Vec> gb = {dZ1.rowwise().sum(), dZ2.rowwise().sum(), dOut.rowwise().sum()};

        double c1 = 1.0 - std::pow(b1, e), c2 = 1.0 - std::pow(b2, e);
        for (int l = 0; l < 3; ++l) {
            mW[l] = b1 * mW[l] + (1 - b1) * gW[l];
            vW[l] = b2 * vW[l] + (1 - b2) * gW[l].cwiseAbs2();
            W_[l].array() -= spec.learning_rate * (mW[l].array() / c1) / ((vW[l].array() / c2).sqrt() + eps);
            mb[l] = b1 * mb[l] + (1 - b1) * gb[l];
            vb[l] = b2 * vb[l] + (1 - b2) * gb[l].cwiseAbs2();
            b_[l].array() -= spec.learning_rate * (mb[l].array() / c1) / ((vb[l].array() / c2).sqrt() + eps);
        }
        if (!std::isfinite(dOut.squaredNorm())) throw TrainingDivergedError("mlp training: non-finite loss");
    }
    rep.final_loss = loss_on(X, Y);
    rep.epochs = spec.epochs;
    if (!std::isfinite(rep.final_loss)) throw TrainingDivergedError("mlp training: non-finite loss");
    report_ = rep;
    return rep;
}

std::shared_ptr<const MlpField> make_mlp(const MlpSpec& spec, std::uint64_t seed) {
    auto net = std::make_shared<MlpField>(spec.dim, spec.width, seed);
    if (spec.training) net->train(*spec.training, seed);
    return net;
}

// ---- custom / sum ----

CustomField::CustomField(int dim, DualMap f, std::string name) : dim_(dim), f_(std::move(f)), name_(std::move(name)) {}

Vec CustomField::eval(const Vec& x, double t) const {
    std::vector<Dual> xs(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) xs[j] = Dual(x[j]);
    auto u = f_(xs, t);
    Vec out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j].v;
    return out;
}

Vec CustomField::jvp(const Vec& x, double t, const Vec& v) const {
    std::vector<Dual> xs(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) xs[j] = Dual(x[j], v[j]);
    auto u = f_(xs, t);
    Vec out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j].d;
    return out;
}

SumField::SumField(FieldPtr a, FieldPtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->dim() != b_->dim()) throw DomainError("sum field: dimension mismatch");
}

Vec SumField::eval(const Vec& x, double t) const { return a_->eval(x, t) + b_->eval(x, t); }
Vec SumField::jvp(const Vec& x, double t, const Vec& v) const { return a_->jvp(x, t, v) + b_->jvp(x, t, v); }
double SumField::divergence(const Vec& x, double t) const { return a_->divergence(x, t) + b_->divergence(x, t); }

}  // namespace ch
