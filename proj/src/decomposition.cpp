#include "plap/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <sstream>

#include "plap/dijkstra.hpp"
#include "plap/parallel.hpp"

namespace plap {

namespace {

constexpr double kRadiusSlack = 1e-9;
constexpr double kMeasureSlack = 1e-12;

std::size_t uidx(Vertex v) { return static_cast<std::size_t>(v); }

// Radii are compared after rounding relative to sqrt(ς(X)) so that the
// greedy order is unchanged by a uniform rescaling of the space.
std::int64_t radius_key(double R, double reference) {
  return static_cast<std::int64_t>(std::llround(R / reference * 4294967296.0));
}

struct Settled {
  Vertex v;
  double d;
};

// Result of scanning one centre for its smallest admissible outer radius.
struct AnnulusFit {
  bool ok = false;
  double R = 0.0;
  double r = 0.0;
};

class AnnulusScanner {
 public:
  AnnulusScanner(const DiscreteSpace& space, const std::vector<char>& blocked, double target, double cap,
                 double scan_limit)
      : space_(space), blocked_(blocked), target_(target), cap_(cap), scan_limit_(scan_limit), ws_(space) {}

  AnnulusFit fit(Vertex a) {
    list_.clear();
    prefix_.assign(1, 0.0);
    blocked_d_.clear();
    std::size_t next = 1;  // candidate index into list_
    AnnulusFit best;
    bool done = false;
    auto try_candidates = [&](double settled_limit, bool exhausted) {
      while (!done && next < list_.size()) {
        const double dj = list_[next].d;
        const double R = dj * (1.0 + kRadiusSlack);
        if (!exhausted && !(settled_limit >= 2.0 * R)) return;
        // Skip to the last vertex at this distance.
        if (next + 1 < list_.size() && list_[next + 1].d <= dj) {
          ++next;
          continue;
        }
        if (!exhausted && next + 1 >= list_.size()) return;
        if (!(R < cap_)) {
          done = true;
          return;
        }
        const double ball_measure = measure_below(R);
        if (ball_measure > scan_limit_ * target_) {
          done = true;
          return;
        }
        const auto it = std::lower_bound(blocked_d_.begin(), blocked_d_.end(), 2.0 * R);
        const double mb = it == blocked_d_.begin() ? 0.0 : *(it - 1);
        const double r = mb > 0.0 ? 2.0 * mb * (1.0 + kRadiusSlack) : 0.0;
        if (r < R) {
          const double inner = ball_measure - measure_at_most(r);
          if (inner >= target_ * (1.0 - kMeasureSlack)) {
            best = {true, R, r};
            done = true;
            return;
          }
        }
        ++next;
      }
    };
    const double cutoff = std::isfinite(cap_) ? 2.0 * cap_ : kInfinity;
    ws_.run(a, cutoff, [&](Vertex v, double d) {
      list_.push_back({v, d});
      prefix_.push_back(prefix_.back() + space_.measure(v));
      if (blocked_[uidx(v)]) blocked_d_.push_back(d);
      try_candidates(d, false);
      return !done;
    });
    if (!done) try_candidates(kInfinity, true);
    return best;
  }

 private:
  const DiscreteSpace& space_;
  const std::vector<char>& blocked_;
  double target_, cap_, scan_limit_;
  DijkstraWorkspace ws_;
  std::vector<Settled> list_;
  std::vector<double> prefix_;
  std::vector<double> blocked_d_;

  // ς({d < x}) and ς({d ≤ x}) over the settled prefix.
  double measure_below(double x) const {
    const auto it = std::lower_bound(list_.begin(), list_.end(), x, [](const Settled& s, double t) { return s.d < t; });
    return prefix_[static_cast<std::size_t>(it - list_.begin())];
  }
  double measure_at_most(double x) const {
    const auto it = std::upper_bound(list_.begin(), list_.end(), x, [](double t, const Settled& s) { return t < s.d; });
    return prefix_[static_cast<std::size_t>(it - list_.begin())];
  }
};

Capacitor make_annulus_capacitor(const DiscreteSpace& space, Vertex a, double r, double R) {
  Capacitor cap;
  cap.kind = CapacitorKind::annulus_pair;
  cap.center = a;
  cap.r_in = r;
  cap.r_out = R;
  std::vector<Vertex> inner, outer;
  for (const auto& [v, d] : space.ball_members(a, 2.0 * R)) {
    if (d > r / 2.0 || (r == 0.0)) outer.push_back(v);
    if (d < R && (r == 0.0 ? true : d > r)) inner.push_back(v);
  }
  cap.inner = VertexSet(space, std::move(inner));
  cap.outer = VertexSet(space, std::move(outer));
  cap.separation = separation(space, cap.inner, cap.outer);
  return cap;
}

std::vector<Vertex> closure(const DiscreteSpace& space, const VertexSet& set) {
  std::vector<Vertex> out = set.members();
  for (Vertex v : set.members()) {
    for (const auto& nb : space.neighbors(v)) out.push_back(nb.vertex);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void fill_summary(const DiscreteSpace& space, DecompositionCertificate& cert) {
  cert.measure_floor = kInfinity;
  for (const auto& c : cert.capacitors) cert.measure_floor = std::min(cert.measure_floor, c.inner.measure());
  if (cert.capacitors.empty()) cert.measure_floor = 0.0;
  cert.certified_c = cert.measure_floor * cert.k / space.total_measure();
  cert.disjoint = true;
  cert.separated = true;
  std::vector<int> owner(space.size(), -1);
  for (std::size_t i = 0; i < cert.capacitors.size(); ++i) {
    for (Vertex v : cert.capacitors[i].outer.members()) {
      if (owner[uidx(v)] != -1) cert.disjoint = false;
      owner[uidx(v)] = static_cast<int>(i);
    }
  }
  if (!cert.disjoint) {
    cert.separated = false;
    return;
  }
  for (std::size_t i = 0; i < cert.capacitors.size() && cert.separated; ++i) {
    for (Vertex v : cert.capacitors[i].outer.members()) {
      for (const auto& nb : space.neighbors(v)) {
        const int o = owner[uidx(nb.vertex)];
        if (o != -1 && o != static_cast<int>(i)) {
          cert.separated = false;
          break;
        }
      }
      if (!cert.separated) break;
    }
  }
}

std::string shortfall(const char* what, std::size_t achieved, int wanted) {
  std::ostringstream os;
  os << "decomposition failed: " << what << " (achieved " << achieved << " of " << wanted << ")";
  return os.str();
}

}  // namespace

std::string to_string(CapacitorKind kind) {
  return kind == CapacitorKind::annulus_pair ? "annulus_pair" : "ball_union";
}

std::string to_string(DecompositionForm form) {
  return form == DecompositionForm::annuli ? "annuli" : "ball_unions";
}

// ---------------------------------------------------------------------------
// Annuli

DecompositionCertificate gny_annuli_fixed(const DiscreteSpace& space, int k, double c, double radius_cap,
                                          double scan_limit) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const std::size_t n = space.size();
  const double target = c * space.total_measure() / k;
  const double reference = std::sqrt(space.total_measure());

  std::vector<char> blocked(n, 0);
  std::vector<AnnulusFit> fits(n);
  std::vector<std::int64_t> keys(n, 0);
  std::vector<char> dirty(n, 0), alive(n, 0);
  using Entry = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    AnnulusScanner scan(space, blocked, target, radius_cap, scan_limit);
    for (std::size_t a = begin; a < end; ++a) {
      fits[a] = scan.fit(static_cast<Vertex>(a));
      alive[a] = fits[a].ok;
      if (fits[a].ok) keys[a] = radius_key(fits[a].R, reference);
    }
  });
  double max_R = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (alive[a]) {
      heap.push({keys[a], static_cast<Vertex>(a)});
      max_R = std::max(max_R, fits[a].R);
    }
  }

  DecompositionCertificate cert;
  cert.k = k;
  cert.form = DecompositionForm::annuli;
  if (std::isfinite(radius_cap)) cert.radius_cap = radius_cap;
  AnnulusScanner scan(space, blocked, target, radius_cap, scan_limit);
  DijkstraWorkspace ws(space);

  while (static_cast<int>(cert.capacitors.size()) < k) {
    if (heap.empty()) throw DecompositionError(shortfall("no admissible annulus", cert.capacitors.size(), k));
    const auto [key, a] = heap.top();
    heap.pop();
    const auto ai = uidx(a);
    if (!alive[ai] || blocked[ai] || key != keys[ai]) continue;
    if (dirty[ai]) {
      dirty[ai] = 0;
      fits[ai] = scan.fit(a);
      if (!fits[ai].ok) {
        alive[ai] = 0;
        continue;
      }
      keys[ai] = radius_key(fits[ai].R, reference);
      max_R = std::max(max_R, fits[ai].R);
      heap.push({keys[ai], a});
      continue;
    }
    alive[ai] = 0;
    Capacitor cap = make_annulus_capacitor(space, a, fits[ai].r, fits[ai].R);
    const std::vector<Vertex> grown = closure(space, cap.outer);
    std::vector<Vertex> fresh;
    for (Vertex v : grown) {
      if (!blocked[uidx(v)]) {
        blocked[uidx(v)] = 1;
        fresh.push_back(v);
      }
    }
    cert.capacitors.push_back(std::move(cap));
    ws.run(std::span<const Vertex>(fresh), 2.0 * max_R * (1.0 + kRadiusSlack), [&](Vertex b, double d) {
      const auto bi = uidx(b);
      if (alive[bi] && d < 2.0 * fits[bi].R) dirty[bi] = 1;
      return true;
    });
  }
  fill_summary(space, cert);
  if (cert.certified_c < c * (1.0 - 1e-9))
    throw std::logic_error("annulus measure floor below target");
  return cert;
}

DecompositionCertificate gny_annuli(const DiscreteSpace& space, int k, const AnnuliOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::size_t positive = 0;
  for (double m : space.measures()) positive += m > 0.0 ? 1 : 0;
  if (positive < 2 * static_cast<std::size_t>(k))
    throw DecompositionError("decomposition failed: space has fewer than 2k weighted vertices");
  std::string last;
  for (double c = options.c_target; c >= options.c_min * (1.0 - 1e-12); c *= options.shrink) {
    try {
      auto cert = gny_annuli_fixed(space, k, c, options.radius_cap, options.scan_limit);
      std::ostringstream os;
      os << "annuli at target c = " << c;
      cert.note = os.str();
      return cert;
    } catch (const DecompositionError& e) {
      last = e.what();
    }
  }
  throw DecompositionError(last.empty() ? "decomposition failed" : last);
}

// ---------------------------------------------------------------------------
// Ball unions

std::vector<Capacitor> build_ball_unions(const DiscreteSpace& space, const BallUnionOptions& opt) {
  if (opt.count < 1) throw std::invalid_argument("count must be positive");
  if (!(opt.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const std::size_t n = space.size();
  std::vector<char> blocked(n, 0), forbidden(n, 0), outside(n, 0);
  std::vector<Capacitor> out;
  DijkstraWorkspace ws(space);
  auto ball_measure = [&](Vertex x, bool restricted) {
    double m = 0.0;
    ws.run(x, opt.radius, [&](Vertex v, double) {
      if (!restricted || !outside[uidx(v)]) m += space.measure(v);
      return true;
    });
    return m;
  };

  for (int i = 0; i < opt.count; ++i) {
    outside = blocked;
    using Entry = std::pair<double, Vertex>;
    auto cmp = [](const Entry& x, const Entry& y) {
      return x.first < y.first || (x.first == y.first && x.second > y.second);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    for (std::size_t x = 0; x < n; ++x) {
      if (forbidden[x]) continue;
      const double m = ball_measure(static_cast<Vertex>(x), true);
      if (m > 0.0) heap.push({m, static_cast<Vertex>(x)});
    }
    std::vector<Vertex> centers;
    double acc = 0.0;
    while (acc < opt.target * (1.0 - kMeasureSlack)) {
      if (heap.empty()) {
        std::ostringstream os;
        os << "decomposition failed: ball union " << i << " reached measure " << acc << " of " << opt.target
           << " (" << out.size() << " of " << opt.count << " sets complete)";
        throw DecompositionError(os.str());
      }
      const auto [key, x] = heap.top();
      heap.pop();
      const double m = ball_measure(x, true);
      if (m < key) {
        if (m > 0.0) heap.push({m, x});
        continue;
      }
      centers.push_back(x);
      acc += ball_measure(x, false);
      ws.run(x, 5.0 * opt.radius, [&](Vertex v, double) {
        outside[uidx(v)] = 1;
        return true;
      });
    }
    Capacitor cap;
    cap.kind = CapacitorKind::ball_union;
    cap.radius = opt.radius;
    std::vector<Vertex> members;
    for (Vertex x : centers) {
      for (const auto& [v, d] : space.ball_members(x, opt.radius)) members.push_back(v);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    cap.centers = std::move(centers);
    cap.inner = VertexSet(space, std::move(members));
    cap.outer = neighborhood(space, cap.inner, opt.collar);
    cap.separation = separation(space, cap.inner, cap.outer);
    for (Vertex v : cap.outer.members()) blocked[uidx(v)] = 1;
    ws.run(std::span<const Vertex>(cap.inner.members()), opt.gap + opt.radius, [&](Vertex v, double) {
      forbidden[uidx(v)] = 1;
      return true;
    });
    if (opt.separate_outer) {
      const std::vector<Vertex> grown = closure(space, cap.outer);
      ws.run(std::span<const Vertex>(grown), opt.collar + opt.radius, [&](Vertex v, double) {
        forbidden[uidx(v)] = 1;
        return true;
      });
    }
    out.push_back(std::move(cap));
  }
  return out;
}

namespace {

double max_ball_measure(const DiscreteSpace& space, double r) {
  std::vector<double> best(space.size(), 0.0);
  parallel_for(space.size(), [&](std::size_t begin, std::size_t end) {
    DijkstraWorkspace ws(space);
    for (std::size_t x = begin; x < end; ++x) {
      double m = 0.0;
      ws.run(static_cast<Vertex>(x), r, [&](Vertex v, double) {
        m += space.measure(v);
        return true;
      });
      best[x] = m;
    }
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

Capacitor capacitor_pair(const DiscreteSpace& space, double beta, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(beta > 0.0) || beta > space.total_measure() / 2.0 * (1.0 + kMeasureSlack))
    throw std::invalid_argument("beta must lie in (0, total measure / 2]");
  const int N = covering_number(space, r);
  const double floor = beta / (2.0 * N);
  if (max_ball_measure(space, r) > floor * (1.0 + kMeasureSlack))
    throw std::invalid_argument("ball measure too large for radius r");
  BallUnionOptions opt;
  opt.count = 1;
  opt.radius = r;
  opt.collar = 4.0 * r;
  opt.gap = 4.0 * r;
  opt.target = floor;
  Capacitor cap = build_ball_unions(space, opt).front();
  std::ostringstream os;
  if (cap.inner.measure() < floor * (1.0 - kMeasureSlack) || cap.outer.measure() > beta * (1.0 + kMeasureSlack) ||
      cap.separation < 4.0 * r * (1.0 - kMeasureSlack)) {
    os << "decomposition failed: capacitor measures A = " << cap.inner.measure() << ", D = " << cap.outer.measure()
       << " (need A >= " << floor << ", D <= " << beta << "), separation " << cap.separation;
    throw DecompositionError(os.str());
  }
  verify_capacitor(space, cap);
  return cap;
}

DecompositionCertificate capacitor_family(const DiscreteSpace& space, int k, double r) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  const int N = covering_number(space, r);
  const double total = space.total_measure();
  const double limit = total / (4.0 * N * N * k);
  if (max_ball_measure(space, r) > limit * (1.0 + kMeasureSlack))
    throw std::invalid_argument("ball measure too large for radius r");
  BallUnionOptions opt;
  opt.count = k;
  opt.radius = r;
  opt.collar = 2.0 * r;
  opt.gap = 4.0 * r;
  opt.target = total / (2.0 * N * k);
  DecompositionCertificate cert;
  cert.k = k;
  cert.form = DecompositionForm::ball_unions;
  cert.r0 = r;
  cert.capacitors = build_ball_unions(space, opt);
  fill_summary(space, cert);
  for (std::size_t i = 0; i < cert.capacitors.size(); ++i) {
    if (cert.capacitors[i].inner.measure() < opt.target * (1.0 - kMeasureSlack))
      throw DecompositionError("decomposition failed: ball union below measure floor");
    for (std::size_t j = i + 1; j < cert.capacitors.size(); ++j) {
      if (set_distance(space, cert.capacitors[i].inner, cert.capacitors[j].inner) < 4.0 * r * (1.0 - kMeasureSlack))
        throw DecompositionError("decomposition failed: ball unions closer than 4r");
    }
  }
  verify_certificate(space, cert);
  return cert;
}

DecompositionCertificate merged_decomposition(const DiscreteSpace& space, int k, double a,
                                              const MergedOptions& options) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  if (!std::isfinite(a)) return gny_annuli(space, k, options.annuli);

  AnnuliOptions capped = options.annuli;
  capped.radius_cap = a;
  capped.c_min = std::max(options.c_accept, capped.c_min);
  std::string why;
  try {
    auto cert = gny_annuli(space, k, capped);
    if (cert.certified_c >= options.c_accept) return cert;
    why = "annuli below accepted c";
  } catch (const DecompositionError& e) {
    why = e.what();
  }

  const double r0 = a / 400.0;
  const int N = covering_number(space, r0);
  BallUnionOptions opt;
  opt.count = k;
  opt.radius = r0;
  opt.collar = 4.0 * r0;
  opt.gap = 8.0 * r0;
  opt.separate_outer = true;
  opt.target = space.total_measure() / (2.0 * N * k);
  double smallest = kInfinity;
  for (double m : space.measures()) {
    if (m > 0.0) smallest = std::min(smallest, m);
  }
  std::string last;
  while (opt.target >= smallest) {
    try {
      DecompositionCertificate cert;
      cert.k = k;
      cert.form = DecompositionForm::ball_unions;
      cert.r0 = r0;
      cert.radius_cap = a;
      cert.capacitors = build_ball_unions(space, opt);
      fill_summary(space, cert);
      cert.note = "ball unions after annuli attempt: " + why;
      return cert;
    } catch (const DecompositionError& e) {
      last = e.what();
      opt.target /= 2.0;
    }
  }
  throw DecompositionError(last.empty() ? "decomposition failed" : last);
}

double inner_radius_floor(const DiscreteSpace& space, int k, double c) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!(c > 0.0) || c > 1.0) throw std::invalid_argument("c must lie in (0, 1]");
  const double target = c * space.total_measure() / k;
  std::vector<double> best(space.size(), kInfinity);
  parallel_for(space.size(), [&](std::size_t begin, std::size_t end) {
    DijkstraWorkspace ws(space);
    for (std::size_t x = begin; x < end; ++x) {
      double acc = 0.0;
      ws.run(static_cast<Vertex>(x), kInfinity, [&](Vertex v, double d) {
        acc += space.measure(v);
        if (acc >= target * (1.0 - kMeasureSlack)) {
          best[x] = d;
          return false;
        }
        return true;
      });
    }
  });
  const double r = *std::min_element(best.begin(), best.end());
  if (!std::isfinite(r)) return 0.5 * space.diameter();
  return 0.5 * r;
}

// ---------------------------------------------------------------------------
// Verification

bool sets_touch(const DiscreteSpace& space, const VertexSet& a, const VertexSet& b) {
  if (a.intersects(b)) return true;
  for (Vertex v : b.members()) {
    for (const auto& nb : space.neighbors(v)) {
      if (a.contains(nb.vertex)) return true;
    }
  }
  return false;
}

void verify_capacitor(const DiscreteSpace& space, const Capacitor& cap) {
  if (!cap.inner.is_subset_of(cap.outer)) throw std::logic_error("capacitor inner set not inside outer set");
  const double sep = separation(space, cap.inner, cap.outer);
  if (sep != cap.separation) throw std::logic_error("capacitor separation does not match recomputation");
  if (std::abs(cap.inner.measure() - space.measure_of(cap.inner.members())) > 1e-12 * space.total_measure())
    throw std::logic_error("capacitor measure does not match recomputation");
}

void verify_certificate(const DiscreteSpace& space, const DecompositionCertificate& cert) {
  DecompositionCertificate check = cert;
  fill_summary(space, check);
  if (check.measure_floor != cert.measure_floor) throw std::logic_error("measure floor does not match recomputation");
  if (cert.disjoint && !check.disjoint) throw std::logic_error("outer sets are not pairwise disjoint");
  if (cert.separated && !check.separated) throw std::logic_error("outer sets are joined by an edge");
  for (const auto& cap : cert.capacitors) verify_capacitor(space, cap);
}

}  // namespace plap
