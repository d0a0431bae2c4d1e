#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "swarmcover/core.hpp"

namespace swarmcover::energy {

constexpr double kGroundReferenceSpeed = 0.068;  // m/s
constexpr double kUavReferenceSpeed = 0.074;     // m/s
constexpr double kUavReferenceFlight_s = 1800.0;  // 30 minutes per charge

enum class RobotKind { Ground, Uav };

struct RobotSpec {
  std::string name;
  RobotKind kind = RobotKind::Ground;
  std::optional<double> max_speed;         // m/s
  std::optional<double> operating_time_s;  // per charge
  std::optional<double> consumption_rate;  // J/s as listed
  std::optional<double> monetary_cost;     // in `currency`
  std::string currency;                    // verbatim code, no normalization
  std::optional<double> battery_mah;
  std::optional<double> battery_v;
};

// A published derived value together with the quantum of its printed
// rounding; a reproduction is accepted within one quantum.
struct PrintedCell {
  double value = 0.0;
  double quantum = 0.0;
};

struct SpecRow {
  RobotSpec spec;
  std::optional<PrintedCell> printed_distance_m;
  std::optional<PrintedCell> printed_joule_per_m;
  std::optional<PrintedCell> printed_cost_per_m;  // EUR/m
  std::string notes;
};

// ---------------------------------------------------------------------------
// calculators

inline double max_distance_per_charge(const RobotSpec& spec) {
  if (!spec.max_speed || !spec.operating_time_s)
    throw MissingField(spec.name + ": speed or operating time not listed");
  return *spec.max_speed * *spec.operating_time_s;
}

inline double distance_at_speed(double speed, double duration_s) {
  return speed * duration_s;
}

inline double consumption_per_meter(double rate_j_per_s, double speed_m_per_s) {
  if (rate_j_per_s == 0.0) return 0.0;
  if (speed_m_per_s <= 0.0) throw ZeroSpeed("reference speed must be positive");
  return rate_j_per_s / speed_m_per_s;
}

// informal conversion implied by the published cost columns (CHF treated 1:1)
inline double implied_eur_rate(const std::string& currency) {
  if (currency == "USD") return 0.836;
  return 1.0;  // EUR, CHF
}

inline double cost_per_meter(const RobotSpec& spec, double distance_m) {
  if (!spec.monetary_cost) throw MissingField(spec.name + ": cost not listed");
  if (distance_m <= 0.0) throw ZeroSpeed("distance must be positive");
  return *spec.monetary_cost * implied_eur_rate(spec.currency) / distance_m;
}

// seconds of operation for the whole team under a shared energy budget
inline double budget_runtime(double budget_j, double ground_rate, double uav_rate,
                             int n_ground, int n_uav) {
  double rate = n_ground * ground_rate + n_uav * uav_rate;
  if (rate <= 0.0) throw ZeroConsumption("total consumption rate is zero");
  return budget_j / rate;
}

// ---------------------------------------------------------------------------
// completeness curves

struct CompletenessCurve {
  std::string label;
  std::vector<double> x;    // strictly increasing abscissa
  std::vector<double> pct;  // non-decreasing, <= 100
};

inline double completeness_at(const CompletenessCurve& curve, double x) {
  if (curve.x.empty()) throw BeforeCurveStart("empty curve");
  if (x < curve.x.front()) throw BeforeCurveStart("abscissa precedes curve start");
  if (x >= curve.x.back()) return curve.pct.back();
  auto it = std::upper_bound(curve.x.begin(), curve.x.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - curve.x.begin());
  std::size_t lo = hi - 1;
  double u = (x - curve.x[lo]) / (curve.x[hi] - curve.x[lo]);
  return curve.pct[lo] + u * (curve.pct[hi] - curve.pct[lo]);
}

struct Crossover {
  double x = 0.0;
  std::string overtaking;  // label of the curve taking the lead in the pair
  std::string overtaken;
};

// All pairwise leadership changes between the given curves, located by
// bisection on the interpolated difference. Sorted by abscissa.
inline std::vector<Crossover> crossover_thresholds(
    const std::vector<CompletenessCurve>& curves) {
  std::vector<Crossover> out;
  if (curves.size() < 2) return out;
  double lo = curves[0].x.front(), hi = curves[0].x.back();
  for (const auto& c : curves) {
    lo = std::max(lo, c.x.front());
    hi = std::min(hi, c.x.back());
  }
  const int kSamples = 4000;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      auto diff = [&](double x) {
        return completeness_at(curves[i], x) - completeness_at(curves[j], x);
      };
      // track the last nonzero sign so leadership changes that pass exactly
      // through zero at a knot are still caught
      double sign_x = lo;
      double sign_d = 0.0;
      for (int s = 0; s <= kSamples; ++s) {
        double x = lo + (hi - lo) * s / kSamples;
        double d = diff(x);
        if (d == 0.0) continue;
        if (sign_d != 0.0 && ((sign_d < 0.0) != (d < 0.0))) {
          double a = sign_x, b = x;
          for (int it = 0; it < 60; ++it) {
            double m = 0.5 * (a + b);
            double dm = diff(m);
            if (dm == 0.0 || ((dm < 0.0) == (sign_d < 0.0)))
              a = m;
            else
              b = m;
          }
          double cx = 0.5 * (a + b);
          bool i_leads_after = d > 0.0;
          out.push_back({cx, i_leads_after ? curves[i].label : curves[j].label,
                         i_leads_after ? curves[j].label : curves[i].label});
        }
        sign_x = x;
        sign_d = d;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Crossover& a, const Crossover& b) { return a.x < b.x; });
  return out;
}

// area-per-robot limits at which relative performance shifts, given a
// per-charge distance budget (meters per robot) and crossover abscissas in
// meters traveled per square meter
inline std::vector<double> area_thresholds(double per_charge_distance_m,
                                           const std::vector<double>& crossover_xs) {
  std::vector<double> out;
  out.reserve(crossover_xs.size());
  for (double x : crossover_xs) out.push_back(per_charge_distance_m / x);
  return out;
}

inline std::vector<double> area_thresholds_speed_limited(
    double max_speed, const std::vector<double>& crossover_xs,
    double uav_flight_s = kUavReferenceFlight_s) {
  return area_thresholds(max_speed * uav_flight_s, crossover_xs);
}

// ---------------------------------------------------------------------------
// bundled dataset (Appendix product tables, printed values kept verbatim)

inline std::vector<SpecRow> builtin_specs() {
  std::vector<SpecRow> rows;
  auto ground = [&](std::string name, double speed, double hours,
                    std::optional<double> mah, std::optional<double> volts,
                    std::optional<double> rate, std::optional<double> cost,
                    std::string currency, std::optional<PrintedCell> dist,
                    std::optional<PrintedCell> jm, std::optional<PrintedCell> cm,
                    std::string notes) {
    SpecRow r;
    r.spec.name = std::move(name);
    r.spec.kind = RobotKind::Ground;
    r.spec.max_speed = speed;
    r.spec.operating_time_s = hours * 3600.0;
    r.spec.battery_mah = mah;
    r.spec.battery_v = volts;
    r.spec.consumption_rate = rate;
    r.spec.monetary_cost = cost;
    r.spec.currency = std::move(currency);
    r.printed_distance_m = dist;
    r.printed_joule_per_m = jm;
    r.printed_cost_per_m = cm;
    r.notes = std::move(notes);
    rows.push_back(std::move(r));
  };
  auto uav = [&](std::string name, std::optional<double> speed, double minutes,
                 double mah, double volts, double rate, std::optional<double> cost,
                 std::string currency, PrintedCell dist, PrintedCell jm,
                 std::optional<PrintedCell> cm, std::string notes) {
    SpecRow r;
    r.spec.name = std::move(name);
    r.spec.kind = RobotKind::Uav;
    r.spec.max_speed = speed;
    r.spec.operating_time_s = minutes * 60.0;
    r.spec.battery_mah = mah;
    r.spec.battery_v = volts;
    r.spec.consumption_rate = rate;
    r.spec.monetary_cost = cost;
    r.spec.currency = std::move(currency);
    r.printed_distance_m = dist;
    r.printed_joule_per_m = jm;
    r.printed_cost_per_m = cm;
    r.notes = std::move(notes);
    rows.push_back(std::move(r));
  };

  // listed consumption rates do not follow from the battery figures by any
  // single formula; they are carried as published
  ground("e-puck2", 0.154, 3.0, 600, 3.7, 2.9, 850, "CHF",
         PrintedCell{1700, 100}, PrintedCell{43, 1}, PrintedCell{0.50, 0.02},
         "cost/m printed value derives from the rounded 1.7 km distance");
  ground("Thymio II", 0.14, 4.0, 375, 3.7, 2.7, 140, "EUR",
         PrintedCell{2000, 1000}, PrintedCell{40, 1}, PrintedCell{0.07, 0.01}, "");
  ground("TurtleBot3 Burger", 0.22, 2.5, 720, 11.1, 6.2, 580, "EUR",
         PrintedCell{2000, 1000}, PrintedCell{91, 1}, PrintedCell{0.29, 0.01}, "");
  ground("iRobot Roomba e", 0.5, 1.5, 1200, 14.4, 3.5, 400, "EUR",
         PrintedCell{3000, 1000}, PrintedCell{52, 1}, PrintedCell{0.15, 0.01}, "");
  ground("Clearpath Husky", 1.0, 3.0, 6500, 24, 32.0, 22000, "EUR",
         PrintedCell{11000, 1000}, PrintedCell{470, 10}, PrintedCell{2.04, 0.01}, "");
  ground("Clearpath Warthog", 5.0, 3.0, 36500, 48, 71.4, 90000, "EUR",
         PrintedCell{55000, 1000}, PrintedCell{1050, 10}, PrintedCell{1.67, 0.01},
         "published 55 km exceeds 5 m/s x 3 h by one rounding unit");
  ground("ECA Cameleon C", 1.7, 4.0, std::nullopt, std::nullopt, std::nullopt,
         std::nullopt, "", PrintedCell{25000, 1000}, std::nullopt, std::nullopt,
         "consumption and cost not listed by the manufacturer");
  ground("ASI Chaos", 2.2, 3.0, std::nullopt, std::nullopt, std::nullopt,
         std::nullopt, "", PrintedCell{25000, 2000}, std::nullopt, std::nullopt,
         "published 25 km vs 2.2 m/s x 3 h = 23.8 km; consumption not listed");
  ground("SMP Rover S5 PTZ", 1.8, 12.0, 10000, 12, 54.4, std::nullopt, "",
         PrintedCell{80000, 5000}, PrintedCell{800, 10}, std::nullopt,
         "published 80 km vs 1.8 m/s x 12 h = 77.8 km");
  ground("Mattro Rovo 2", 8.3, 8.0, 11000, 100, 72.1, std::nullopt, "",
         PrintedCell{240000, 1000}, PrintedCell{1060, 10}, std::nullopt, "");
  ground("Spot Explorer", 1.6, 1.5, 7000, 58, 25.8, 75000, "USD",
         PrintedCell{9000, 1000}, PrintedCell{380, 10}, PrintedCell{7.26, 0.01}, "");

  // drone distances and per-meter figures are published at the 0.074 m/s
  // supervision speed; flight rates equal the battery watt-hour figure as
  // printed
  uav("DJI Mini 2", 16.0, 31.0, 1160, 7.7, 8.9, 1500, "EUR",
      PrintedCell{140, 10}, PrintedCell{120, 10}, PrintedCell{10.71, 0.2},
      "cost/m printed value derives from the rounded 140 m distance");
  uav("DJI Mavic 2", 20.0, 31.0, 1990, 15.4, 30.6, 1500, "EUR",
      PrintedCell{140, 10}, PrintedCell{410, 10}, PrintedCell{10.71, 0.2},
      "cost/m printed value derives from the rounded 140 m distance");
  uav("U49WF FPV", std::nullopt, 25.0, 830, 7.4, 6.1, 100, "USD",
      PrintedCell{110, 10}, PrintedCell{82, 1}, PrintedCell{0.76, 0.01}, "");
  uav("Skydio 2", 16.1, 23.0, 1640, 11.4, 18.7, 1000, "USD",
      PrintedCell{100, 10}, PrintedCell{250, 10}, PrintedCell{8.36, 0.2},
      "cost/m printed value derives from the rounded 100 m distance");
  uav("Autel Evo II", 20.1, 40.0, 4730, 11.55, 54.6, 1500, "USD",
      PrintedCell{180, 10}, PrintedCell{740, 10}, PrintedCell{6.97, 0.1}, "");
  return rows;
}

// published crossover abscissas (meters traveled per square meter)
inline std::vector<double> published_crossovers() { return {0.87, 1.64, 2.61}; }

// Reference completeness-by-distance curves distilled from the published
// figure: monotone piecewise-linear curves that reproduce the documented
// leadership changes (0.87, 1.64, 2.61 m per sqm) and the final ranking.
inline std::vector<CompletenessCurve> reference_curves() {
  std::vector<double> xs{0.0, 0.4, 0.87, 1.64, 2.61, 3.0, 4.0};
  std::vector<CompletenessCurve> curves;
  curves.push_back({"decentralized", xs, {0.0, 30.0, 42.0, 56.0, 66.0, 69.0, 72.0}});
  curves.push_back({"hybrid_mns", xs, {0.0, 12.0, 35.0, 52.0, 66.0, 75.0, 93.0}});
  curves.push_back(
      {"centralized_formation", xs, {0.0, 15.0, 42.0, 63.0, 80.0, 90.0, 96.0}});
  curves.push_back({"predetermined", xs, {0.0, 8.0, 30.0, 63.0, 85.0, 93.0, 99.0}});
  return curves;
}

}  // namespace swarmcover::energy
