#include "buffon/series.hpp"

#include <mutex>
#include <utility>
#include <vector>

namespace buffon {

namespace {

class EnvelopeProvider final : public SeriesProvider {
  public:
    explicit EnvelopeProvider(ProviderPtr inner) : inner_(std::move(inner)) {}

    Rational term(std::uint64_t j) const override { return inner_->term(j); }

    Rational error_bound(std::uint64_t n) const override {
        if (n == 0) {
            return Rational(1);
        }
        std::lock_guard<std::mutex> lock(mutex_);
        while (cache_.size() < n) {
            Rational e = inner_->error_bound(cache_.size() + 1);
            if (!cache_.empty() && cache_.back() < e) {
                e = cache_.back();
            }
            cache_.push_back(std::move(e));
        }
        return cache_[n - 1];
    }

    bool negate_output() const override { return inner_->negate_output(); }

    std::string name() const override { return inner_->name(); }

  private:
    ProviderPtr inner_;
    mutable std::mutex mutex_;
    mutable std::vector<Rational> cache_;
};

class AlternatingProvider final : public SeriesProvider {
  public:
    AlternatingProvider(std::string name,
                        std::function<Rational(std::uint64_t)> b)
        : name_(std::move(name)), b_(std::move(b)) {}

    Rational term(std::uint64_t j) const override {
        Rational a = b_(2 * j - 1) - b_(2 * j);
        if (a.sign() <= 0) {
            throw ContractViolationError(
                name_ + ": alternating terms not decreasing at j=" +
                std::to_string(j));
        }
        return a;
    }

    Rational error_bound(std::uint64_t n) const override {
        if (n == 0) {
            return Rational(1);
        }
        return b_(2 * n + 1);
    }

    std::string name() const override { return name_; }

  private:
    std::string name_;
    std::function<Rational(std::uint64_t)> b_;
};

class RationalProvider final : public SeriesProvider {
  public:
    RationalProvider(BigInt n, BigInt d) : value_(std::move(n), std::move(d)) {
        if (value_.sign() <= 0 || value_ >= Rational(1)) {
            throw DomainError("rational_provider: target must be in (0,1)");
        }
    }

    Rational term(std::uint64_t j) const override {
        if (j != 1) {
            throw DomainError(
                "rational_provider: degenerate series has a single term");
        }
        return value_;
    }

    Rational error_bound(std::uint64_t n) const override {
        return n == 0 ? Rational(1) : Rational(0);
    }

    std::string name() const override { return "rational:" + value_.str(); }

  private:
    Rational value_;
};

class ComplementProvider final : public SeriesProvider {
  public:
    explicit ComplementProvider(ProviderPtr inner) : inner_(std::move(inner)) {}

    Rational term(std::uint64_t j) const override { return inner_->term(j); }

    Rational error_bound(std::uint64_t n) const override {
        return inner_->error_bound(n);
    }

    bool negate_output() const override { return !inner_->negate_output(); }

    std::string name() const override {
        return "complement(" + inner_->name() + ")";
    }

  private:
    ProviderPtr inner_;
};

}  // namespace

ProviderPtr monotone_envelope(ProviderPtr inner) {
    return std::make_shared<EnvelopeProvider>(std::move(inner));
}

ProviderPtr alternating_adapter(std::string name,
                                std::function<Rational(std::uint64_t)> b) {
    return std::make_shared<AlternatingProvider>(std::move(name),
                                                 std::move(b));
}

ProviderPtr rational_provider(BigInt n, BigInt d) {
    return std::make_shared<RationalProvider>(std::move(n), std::move(d));
}

ProviderPtr complemented(ProviderPtr inner) {
    return std::make_shared<ComplementProvider>(std::move(inner));
}

}  // namespace buffon
