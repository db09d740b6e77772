#include "tsbench/forecast/naive.hpp"

#include <numeric>

#include "tsbench/error.hpp"

namespace tsbench {

namespace {

// The forecast repeats one stored season (length 1 for the flat strategies),
// optionally plus a per-step slope.
class RepeatingState final : public ModelState {
 public:
  RepeatingState(std::vector<double> season, double slope)
      : season_(std::move(season)), slope_(slope) {}

  std::vector<double> forecast(int h) const override {
    std::vector<double> out(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i)
      out[static_cast<std::size_t>(i)] =
          season_[static_cast<std::size_t>(i) % season_.size()] + slope_ * (i + 1);
    return out;
  }

 private:
  std::vector<double> season_;
  double slope_;
};

}  // namespace

std::shared_ptr<const ModelState> fit_seasonal_naive(std::span<const double> train,
                                                     const SeasonalNaiveParams& params) {
  const auto sp = static_cast<std::size_t>(params.sp);
  if (params.sp < 1) throw Error(ErrorCode::InvalidParameter, "sp must be >= 1");
  if (train.size() < sp || train.empty())
    throw Error(ErrorCode::SeriesTooShort, "seasonal naive needs at least sp observations");
  return std::make_shared<RepeatingState>(
      std::vector<double>(train.end() - static_cast<std::ptrdiff_t>(sp), train.end()), 0.0);
}

std::shared_ptr<const ModelState> fit_naive(std::span<const double> train, const NaiveParams& params) {
  if (train.empty()) throw Error(ErrorCode::SeriesTooShort, "empty training series");
  if (params.sp < 1) throw Error(ErrorCode::InvalidParameter, "sp must be >= 1");
  const auto n = train.size();
  const auto sp = static_cast<std::size_t>(params.sp);

  switch (params.strategy) {
    case NaiveStrategy::last:
      return fit_seasonal_naive(train, SeasonalNaiveParams{params.sp});

    case NaiveStrategy::mean: {
      if (n < sp) throw Error(ErrorCode::SeriesTooShort, "mean strategy needs at least sp observations");
      // Position k of the forecast season averages every observation that
      // shares its phase, counting phases back from the end of the series.
      std::vector<double> sums(sp, 0.0);
      std::vector<double> counts(sp, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t back = n - 1 - i;
        const std::size_t phase = sp - 1 - back % sp;
        sums[phase] += train[i];
        counts[phase] += 1.0;
      }
      for (std::size_t k = 0; k < sp; ++k) sums[k] /= counts[k];
      return std::make_shared<RepeatingState>(std::move(sums), 0.0);
    }

    case NaiveStrategy::drift: {
      if (params.sp != 1)
        throw Error(ErrorCode::InvalidParameter, "drift strategy requires sp == 1");
      if (n < 2) throw Error(ErrorCode::SeriesTooShort, "drift needs two observations");
      const double slope = (train[n - 1] - train[0]) / static_cast<double>(n - 1);
      return std::make_shared<RepeatingState>(std::vector<double>{train[n - 1]}, slope);
    }
  }
  throw Error(ErrorCode::InvalidParameter, "unknown naive strategy");
}

std::vector<double> naive_predict(std::span<const double> train, int h, const NaiveParams& params) {
  return fit_naive(train, params)->forecast(h);
}

std::vector<double> seasonal_naive_predict(std::span<const double> train, int h, int sp) {
  return fit_seasonal_naive(train, SeasonalNaiveParams{sp})->forecast(h);
}

}  // namespace tsbench
