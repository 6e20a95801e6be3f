#include "triadic/model.hpp"

#include "triadic/error.hpp"
#include "triadic/hypothesis.hpp"

#include <string>

namespace triadic {

namespace {

void check_labels(const std::vector<std::string>& labels, std::size_t k) {
    if (!labels.empty() && labels.size() != k)
        throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(k) + " labels, got " +
                                                      std::to_string(labels.size()));
}

void check_distribution(std::span<const Rational> v, const std::string& what) {
    for (const auto& p : v)
        if (sgn(p) < 0) throw Error(ErrorKind::NonNormalized, what + " has a negative entry");
    if (sum(v) != 1) throw Error(ErrorKind::NonNormalized, what + " sums to " + format_rational(sum(v)));
}

void check_theta_size(std::size_t k) {
    if (k == 0) throw Error(ErrorKind::DimensionMismatch, "Theta must be nonempty");
    if (k > kMaxTheta) throw Error(ErrorKind::TooLarge, "Theta size " + std::to_string(k) + " exceeds 63");
}

}  // namespace

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Model Model::from_likelihood(std::vector<Rational> prior, const RationalMatrix& likelihood,
                             std::vector<std::string> labels) {
    const std::size_t k = prior.size();
    check_theta_size(k);
    if (likelihood.rows() != k)
        throw Error(ErrorKind::DimensionMismatch, "likelihood has " + std::to_string(likelihood.rows()) +
                                                      " rows, prior has " + std::to_string(k) + " entries");
    const std::size_t m = likelihood.cols();
    if (m == 0) throw Error(ErrorKind::DimensionMismatch, "sample space must be nonempty");
    check_labels(labels, k);
    check_distribution(prior, "prior");
    for (std::size_t t = 0; t < k; ++t) check_distribution(likelihood.row(t), "likelihood row " + std::to_string(t));

    Model model;
    model.form_ = Form::Likelihood;
    model.labels_ = std::move(labels);
    model.prior_ = std::move(prior);
    model.likelihood_ = likelihood;
    model.x_marginal_.assign(m, Rational(0));
    model.posterior_.assign(k * m, Rational(0));
    for (std::size_t x = 0; x < m; ++x) {
        Rational& marginal = model.x_marginal_[x];
        for (std::size_t t = 0; t < k; ++t) {
            Rational joint = model.prior_[t] * likelihood(t, x);
            marginal += joint;
            model.posterior_[x * k + t] = std::move(joint);
        }
        if (sgn(marginal) == 0) throw Error(ErrorKind::ImpossibleObservation, "x = " + std::to_string(x) + " has zero marginal");
        for (std::size_t t = 0; t < k; ++t) model.posterior_[x * k + t] /= marginal;
    }
    return model;
}

Model Model::from_posterior(const RationalMatrix& posterior, std::vector<Rational> x_marginal,
                            std::vector<std::string> labels) {
    const std::size_t k = posterior.rows();
    check_theta_size(k);
    const std::size_t m = posterior.cols();
    if (m == 0) throw Error(ErrorKind::DimensionMismatch, "sample space must be nonempty");
    if (x_marginal.size() != m)
        throw Error(ErrorKind::DimensionMismatch, "x_marginal has " + std::to_string(x_marginal.size()) +
                                                      " entries, posterior has " + std::to_string(m) + " columns");
    check_labels(labels, k);
    check_distribution(x_marginal, "x_marginal");
    for (std::size_t x = 0; x < m; ++x)
        if (sgn(x_marginal[x]) == 0) throw Error(ErrorKind::ImpossibleObservation, "x = " + std::to_string(x) + " has zero marginal");

    Model model;
    model.form_ = Form::Posterior;
    model.labels_ = std::move(labels);
    model.x_marginal_ = std::move(x_marginal);
    model.posterior_.assign(k * m, Rational(0));
    for (std::size_t x = 0; x < m; ++x) {
        std::vector<Rational> column(k);
        for (std::size_t t = 0; t < k; ++t) column[t] = posterior(t, x);
        check_distribution(column, "posterior column " + std::to_string(x));
        for (std::size_t t = 0; t < k; ++t) model.posterior_[x * k + t] = std::move(column[t]);
    }

    model.prior_.assign(k, Rational(0));
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t x = 0; x < m; ++x) model.prior_[t] += model.x_marginal_[x] * posterior(t, x);

    // Rows with zero prior never influence the posterior; give them the marginal over X.
    model.likelihood_ = RationalMatrix(k, m);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t x = 0; x < m; ++x)
            model.likelihood_(t, x) = sgn(model.prior_[t]) == 0
                                          ? model.x_marginal_[x]
                                          : Rational(model.x_marginal_[x] * posterior(t, x) / model.prior_[t]);
    return model;
}

std::span<const Rational> Model::posterior(std::size_t x) const {
    if (x >= x_size())
        throw Error(ErrorKind::IndexOutOfRange, "x = " + std::to_string(x) + " outside 0.." + std::to_string(x_size() - 1));
    return {posterior_.data() + x * theta_size(), theta_size()};
}

const Rational& Model::posterior(unsigned theta, std::size_t x) const {
    const auto column = posterior(x);
    if (theta >= column.size()) throw Error(ErrorKind::IndexOutOfRange, "theta = " + std::to_string(theta));
    return column[theta];
}

RationalMatrix Model::posterior_table() const {
    RationalMatrix table(theta_size(), x_size());
    for (std::size_t x = 0; x < x_size(); ++x)
        for (unsigned t = 0; t < theta_size(); ++t) table(t, x) = posterior_[x * theta_size() + t];
    return table;
}

mpz_class binomial(unsigned n, unsigned r) {
    if (r > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, r);
    return out;
}

Model hypergeometric_model(unsigned N, unsigned n) {
    if (n == 0 || n >= N)
        throw Error(ErrorKind::InvalidCounts, "need 0 < n < N, got N = " + std::to_string(N) + ", n = " + std::to_string(n));
    if (N + 1 > kMaxTheta) throw Error(ErrorKind::TooLarge, "N = " + std::to_string(N) + " gives more than 63 parameter points");

    const mpz_class two_pow_n = mpz_class(1) << N;
    std::vector<Rational> prior(N + 1);
    for (unsigned theta = 0; theta <= N; ++theta) {
        prior[theta] = ratio(binomial(N, theta), two_pow_n);
    }

    const mpz_class draws = binomial(N, n);
    RationalMatrix likelihood(N + 1, n + 1);
    for (unsigned theta = 0; theta <= N; ++theta)
        for (unsigned x = 0; x <= n; ++x) {
            likelihood(theta, x) = ratio(binomial(theta, x) * binomial(N - theta, n - x), draws);
        }
    return Model::from_likelihood(std::move(prior), likelihood);
}

}  // namespace triadic
