#pragma once

#include "triadic/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace triadic {

/// Dense row-major rational matrix.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Throws Error(DimensionMismatch) on ragged input.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Finite Theta = {0, ..., k-1} with optional display labels.
struct ParamSpace {
    unsigned size = 1;
    std::vector<std::string> labels;
};

/// Finite Theta x finite X model with the exact posterior table.
///
/// Two construction forms are kept: prior + likelihood (Bayes' rule is applied), or
/// posterior + marginal over X (prior and likelihood are derived). The form used is
/// remembered so serialization reproduces the input.
class Model {
public:
    enum class Form { Likelihood, Posterior };

    /// prior: k entries; likelihood: k rows of m entries (row theta is P(x | theta)).
    static Model from_likelihood(std::vector<Rational> prior, const RationalMatrix& likelihood,
                                 std::vector<std::string> labels = {});
    /// posterior: k rows of m entries (column x is P(theta | x)); x_marginal: m entries, all > 0.
    static Model from_posterior(const RationalMatrix& posterior, std::vector<Rational> x_marginal,
                                std::vector<std::string> labels = {});

    unsigned theta_size() const noexcept { return static_cast<unsigned>(prior_.size()); }
    std::size_t x_size() const noexcept { return x_marginal_.size(); }
    Form form() const noexcept { return form_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    const std::vector<Rational>& prior() const noexcept { return prior_; }
    const RationalMatrix& likelihood() const noexcept { return likelihood_; }
    const std::vector<Rational>& x_marginal() const noexcept { return x_marginal_; }

    /// Column x of the posterior table. Throws Error(IndexOutOfRange).
    std::span<const Rational> posterior(std::size_t x) const;
    const Rational& posterior(unsigned theta, std::size_t x) const;
    /// k x m table, columns are posteriors.
    RationalMatrix posterior_table() const;

    friend bool operator==(const Model&, const Model&) = default;

private:
    Model() = default;

    Form form_ = Form::Likelihood;
    std::vector<std::string> labels_;
    std::vector<Rational> prior_;
    RationalMatrix likelihood_;
    std::vector<Rational> x_marginal_;
    // Stored column-major: posterior(x) is contiguous.
    std::vector<Rational> posterior_;
};

/// Alias used in the operation catalogue: prior + likelihood form.
inline Model make_model(std::vector<Rational> prior, const RationalMatrix& likelihood) {
    return Model::from_likelihood(std::move(prior), likelihood);
}

/// Theta = {0..N} with Binomial(N, 1/2) prior, X = {0..n}, X | theta ~ Hypergeometric(theta, N - theta, n).
/// Throws Error(InvalidCounts) unless 0 < n < N.
Model hypergeometric_model(unsigned N, unsigned n);

/// Binomial coefficient as an exact integer (0 when r > n).
mpz_class binomial(unsigned n, unsigned r);

}  // namespace triadic
