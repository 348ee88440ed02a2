#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spdcomb/analysis.hpp"
#include "test_util.hpp"

using namespace spdcomb;

namespace {
Spectrum make_spectrum(const Arrayd& x, const Arrayd& y, const char* channel = "signal") {
  Spectrum s;
  s.wavelength_um = x;
  s.intensity = y;
  s.meta.channel = channel;
  s.meta.lambda_p_um = 0.532;
  return s;
}

/// cos^2 comb with maxima every `period`, offset so the maxima are interior.
Spectrum cos2_comb(Index n, double x0, double dx, double period_samples) {
  Arrayd x(n), y(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = x0 + dx * static_cast<double>(i);
    const double phase = kPi * (static_cast<double>(i) - period_samples / 2.0) / period_samples;
    const double c = std::cos(phase * 1.0);
    y[i] = c * c;
  }
  return make_spectrum(x, y);
}
}  // namespace

TEST_CASE("synthetic comb: every tooth found, spacing exact") {
  // maxima at sample indices 25, 75, ..., 475 -> ten teeth, 50 samples apart
  const double dx = 1e-3;
  const auto s = cos2_comb(500, 0.6, dx, 50.0);
  const auto peaks = find_peaks(s);
  REQUIRE(peaks.size() == 10);
  CHECK(mean_peak_spacing(peaks) == doctest::Approx(50.0 * dx).epsilon(1e-12));
  CHECK(median_peak_spacing(peaks) == doctest::Approx(50.0 * dx).epsilon(1e-12));
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    CHECK(peaks[i].wavelength_um ==
          doctest::Approx(0.6 + dx * (25.0 + 50.0 * static_cast<double>(i))).epsilon(1e-12));
    CHECK(peaks[i].height == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("parabolic refinement is exact for quadratic data, uneven grid included") {
  Arrayd x(7), y(7);
  x << 0.10, 0.22, 0.31, 0.45, 0.52, 0.68, 0.80;
  const double c = 0.43;
  for (Index i = 0; i < 7; ++i) y[i] = 2.0 - 3.0 * (x[i] - c) * (x[i] - c);
  const auto peaks = find_peaks(make_spectrum(x, y));
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].wavelength_um == doctest::Approx(c).epsilon(1e-12));
  CHECK(peaks[0].height == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("height and prominence thresholds prune minor structure") {
  Arrayd x = linear_grid(0.0, 20.0, 1.0);
  Arrayd y = Arrayd::Zero(x.size());
  y[5] = 1.0;    // dominant tooth
  y[10] = 0.05;  // below the 10% height floor
  y[13] = 0.30;
  y[14] = 0.50;  // genuine second tooth
  y[15] = 0.46;
  y[16] = 0.48;  // strict maximum, but prominence only 0.02 < 5% floor
  y[17] = 0.44;
  const auto peaks = find_peaks(make_spectrum(x, y));
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0].wavelength_um == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(peaks[1].wavelength_um == doctest::Approx(14.0).epsilon(0.1));
  CHECK(peaks[0].prominence == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("peak search needs at least three samples") {
  Arrayd x(2), y(2);
  x << 0.0, 1.0;
  y << 1.0, 2.0;
  CHECK_THROWS_AS((void)find_peaks(make_spectrum(x, y)), InvalidInput);
}

TEST_CASE("spacing statistics require two peaks") {
  std::vector<Peak> one{{0.5, 1.0, 1.0}};
  CHECK_THROWS_AS((void)mean_peak_spacing(one), InsufficientData);
  CHECK_THROWS_AS((void)median_peak_spacing(one), InsufficientData);
  std::vector<Peak> three{{0.1, 1, 1}, {0.2, 1, 1}, {0.4, 1, 1}};
  CHECK(mean_peak_spacing(three) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(median_peak_spacing(three) == doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("gaussian fit recovers exact parameters") {
  const double A = 2.0, mu = 0.64, sig = 0.01;
  Arrayd x = linear_grid(0.60, 0.68, 1e-3);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double u = (x[i] - mu) / sig;
    y[i] = A * std::exp(-0.5 * u * u);
  }
  const auto fit = fit_gaussian(x, y);
  CHECK(fit.amplitude == doctest::Approx(A).epsilon(1e-6));
  CHECK(fit.center_um == doctest::Approx(mu).epsilon(1e-6));
  CHECK(fit.sigma_um == doctest::Approx(sig).epsilon(1e-6));
  CHECK(fit.fwhm_um == doctest::Approx(sig * kFwhmPerSigma).epsilon(1e-6));
  CHECK(fit.residual_rms < 1e-10);
}

TEST_CASE("gaussian fit survives a poor starting geometry") {
  // narrow peak far off-centre in the window: moment init is badly biased
  const double A = 0.8, mu = 0.603, sig = 0.002;
  Arrayd x = linear_grid(0.60, 0.68, 5e-4);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double u = (x[i] - mu) / sig;
    y[i] = A * std::exp(-0.5 * u * u);
  }
  const auto fit = fit_gaussian(x, y);
  CHECK(fit.center_um == doctest::Approx(mu).epsilon(1e-6));
  CHECK(fit.sigma_um == doctest::Approx(sig).epsilon(1e-5));
}

TEST_CASE("gaussian fit rejects degenerate inputs") {
  Arrayd x3 = linear_grid(0.0, 2.0, 1.0);
  CHECK_THROWS_AS((void)fit_gaussian(x3, Arrayd::Ones(3)), InsufficientData);
  Arrayd x = linear_grid(0.0, 9.0, 1.0);
  CHECK_THROWS_AS((void)fit_gaussian(x, Arrayd::Zero(10)), InvalidInput);  // nothing to weight
  CHECK_THROWS_AS((void)fit_gaussian(Arrayd::Ones(10), Arrayd::Ones(10)), InvalidInput);  // no x spread
}

TEST_CASE("envelope fit through comb teeth") {
  const double A = 1.0, mu = 0.647, sig = 0.013;
  std::vector<Peak> peaks;
  for (int i = -5; i <= 5; ++i) {
    const double x = mu + 0.0041 * i;
    const double u = (x - mu) / sig;
    peaks.push_back({x, A * std::exp(-0.5 * u * u), 0.5});
  }
  const auto fit = fit_envelope(peaks);
  CHECK(fit.center_um == doctest::Approx(mu).epsilon(1e-8));
  CHECK(fit.fwhm_um == doctest::Approx(sig * kFwhmPerSigma).epsilon(1e-6));

  std::vector<Peak> three(peaks.begin(), peaks.begin() + 3);
  CHECK_THROWS_AS((void)fit_envelope(three), InsufficientData);
}

TEST_CASE("self-correlation is unity, sign flips with the slope") {
  const Arrayd x = linear_grid(0.60, 0.70, 1e-3);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) y[i] = 0.2 + std::pow(std::sin(90.0 * x[i]), 2);
  const auto s = make_spectrum(x, y);
  CHECK(spcc(s, s) == doctest::Approx(1.0).epsilon(1e-12));

  auto inverted = make_spectrum(x, 2.0 - y);
  CHECK(spcc(s, inverted) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("correlation is invariant under affine rescaling") {
  const Arrayd x = linear_grid(0.60, 0.70, 1e-3);
  Arrayd a(x.size()), b(x.size());
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (Index i = 0; i < x.size(); ++i) {
    a[i] = 1.0 + 0.3 * std::sin(55.0 * x[i]) + 0.05 * g(rng);
    b[i] = 1.0 + 0.3 * std::sin(55.0 * x[i] + 0.4) + 0.05 * g(rng);
  }
  const auto sa = make_spectrum(x, a);
  const double base = spcc(sa, make_spectrum(x, b));
  const double scaled = spcc(sa, make_spectrum(x, 3.7 * b + 11.0));
  CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("correlation resamples the second spectrum onto the first axis") {
  // same smooth curve, tabulated twice as finely: still perfectly correlated
  const Arrayd coarse = linear_grid(0.60, 0.70, 1e-3);
  const Arrayd fine = linear_grid(0.60, 0.70, 5e-4);
  auto eval = [](const Arrayd& x) {
    Arrayd y(x.size());
    for (Index i = 0; i < x.size(); ++i) y[i] = std::exp(-200.0 * (x[i] - 0.65) * (x[i] - 0.65));
    return y;
  };
  const double r = spcc(make_spectrum(coarse, eval(coarse)), make_spectrum(fine, eval(fine)));
  CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("correlation failure modes") {
  const Arrayd x = linear_grid(0.60, 0.70, 1e-3);
  const Arrayd far = linear_grid(2.60, 2.70, 1e-3);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) y[i] = std::sin(3.0 * x[i]);
  CHECK_THROWS_AS((void)spcc(make_spectrum(x, y), make_spectrum(far, y)), InvalidInput);
  CHECK_THROWS_AS((void)spcc(make_spectrum(x, y), make_spectrum(x, Arrayd::Ones(x.size()))),
                  UndefinedCorrelation);
}

TEST_CASE("idler remap is an involution that flips the channel") {
  const Arrayd x = linear_grid(0.60, 0.70, 5e-4);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) y[i] = std::exp(-300.0 * (x[i] - 0.647) * (x[i] - 0.647));
  const auto s = make_spectrum(x, y);

  const auto idler = to_idler(s, 0.532);
  CHECK(idler.meta.channel == "idler");
  for (Index i = 1; i < idler.wavelength_um.size(); ++i)
    CHECK(idler.wavelength_um[i] > idler.wavelength_um[i - 1]);
  // conjugate of the endpoints: 1/(1/0.532 - 1/0.70) and 1/(1/0.532 - 1/0.60)
  CHECK(idler.wavelength_um[0] == doctest::Approx(1.0 / (1.0 / 0.532 - 1.0 / 0.70)).epsilon(1e-12));
  CHECK(idler.wavelength_um[idler.wavelength_um.size() - 1] ==
        doctest::Approx(1.0 / (1.0 / 0.532 - 1.0 / 0.60)).epsilon(1e-12));

  const auto back = to_idler(idler, 0.532);
  CHECK(back.meta.channel == "signal");
  REQUIRE(back.wavelength_um.size() == x.size());
  for (Index i = 0; i < x.size(); ++i) {
    CHECK(back.wavelength_um[i] == doctest::Approx(x[i]).epsilon(1e-13));
    CHECK(back.intensity[i] == y[i]);  // pure reordering, bitwise
  }
}

TEST_CASE("idler remap with the area-preserving weight") {
  const Arrayd x = linear_grid(0.62, 0.67, 1e-3);
  const Arrayd y = Arrayd::Ones(x.size());
  const auto s = make_spectrum(x, y);
  const auto idler = to_idler(s, 0.532, true);
  // weight (ls/li)^2 < 1 on this side of degeneracy, at most 0.068 here
  CHECK(idler.intensity.maxCoeff() < 0.07);
  const auto back = to_idler(idler, 0.532, true);
  for (Index i = 0; i < x.size(); ++i) CHECK(back.intensity[i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("idler remap rejects axes at or below the pump") {
  Arrayd x(3), y(3);
  x << 0.50, 0.60, 0.70;  // first sample below the pump
  y << 1, 1, 1;
  CHECK_THROWS_AS((void)to_idler(make_spectrum(x, y), 0.532), InvalidInput);
  x << 0.532, 0.60, 0.70;  // exactly at the pump: no energy left for the idler
  CHECK_THROWS_AS((void)to_idler(make_spectrum(x, y), 0.532), InvalidInput);
}

TEST_CASE("comb statistics on a modulated envelope") {
  // Gaussian envelope carrying a cos^2 comb: the bread-and-butter input
  const double mu = 0.647, sig = 0.012, period = 0.0041;
  const Arrayd x = linear_grid(0.60, 0.70, 2e-5);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double u = (x[i] - mu) / sig;
    const double c = std::cos(kPi * (x[i] - mu) / period);
    y[i] = std::exp(-0.5 * u * u) * c * c;
  }
  const auto stats = comb_stats(make_spectrum(x, y));
  REQUIRE(stats.peaks.size() >= 8);
  REQUIRE(stats.mean_spacing_um.has_value());
  CHECK(*stats.mean_spacing_um == doctest::Approx(period).epsilon(1e-3));
  REQUIRE(stats.envelope.has_value());
  CHECK_FALSE(stats.envelope_from_samples);
  CHECK(stats.envelope->center_um == doctest::Approx(mu).epsilon(1e-4));
  CHECK(stats.envelope->fwhm_um == doctest::Approx(sig * kFwhmPerSigma).epsilon(0.02));
}

TEST_CASE("comb statistics fall back to a sample fit for an unmodulated lobe") {
  const double mu = 0.647, sig = 0.012;
  const Arrayd x = linear_grid(0.60, 0.70, 2e-4);
  Arrayd y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double u = (x[i] - mu) / sig;
    y[i] = std::exp(-0.5 * u * u);
  }
  const auto stats = comb_stats(make_spectrum(x, y));
  CHECK(stats.peaks.size() == 1);
  CHECK_FALSE(stats.mean_spacing_um.has_value());
  REQUIRE(stats.envelope.has_value());
  CHECK(stats.envelope_from_samples);
  CHECK(stats.envelope->center_um == doctest::Approx(mu).epsilon(1e-6));
  CHECK(stats.envelope->fwhm_um == doctest::Approx(sig * kFwhmPerSigma).epsilon(1e-3));
}

TEST_CASE("comb statistics warn instead of failing when no envelope is fittable") {
  // a single three-sample spike: one peak, too few bright samples for any fit
  Arrayd x = linear_grid(0.0, 8.0, 1.0);
  Arrayd y = Arrayd::Zero(x.size());
  y[4] = 1.0;
  test::WarningCapture capture;
  reset_warning_dedup();
  const auto stats = comb_stats(make_spectrum(x, y));
  CHECK(stats.peaks.size() == 1);
  CHECK_FALSE(stats.envelope.has_value());
  CHECK(capture.has("envelope_fit"));
}
