#include "egeo/splitting_p1.hpp"

#include <algorithm>
#include <map>

#include "egeo/common.hpp"

namespace egeo {

SplittingType::SplittingType(std::vector<long> degrees) : degrees_(std::move(degrees)) {
  std::sort(degrees_.begin(), degrees_.end());
}

SplittingType SumsetFactorization::recombine() const {
  std::vector<long> out;
  out.reserve(b.size() * c.size());
  for (long x : b)
    for (long y : c) out.push_back(x + y + t);
  return SplittingType(std::move(out));
}

namespace {

using Multiset = std::map<long, int>;

bool take(Multiset& r, long x) {
  auto it = r.find(x);
  if (it == r.end()) return false;
  if (--it->second == 0) r.erase(it);
  return true;
}

// Removes x + y for every y in `other`; restores r and fails if any is missing.
bool take_row(Multiset& r, long x, const std::vector<long>& other) {
  for (std::size_t k = 0; k < other.size(); ++k) {
    if (!take(r, x + other[k])) {
      for (std::size_t j = 0; j < k; ++j) ++r[x + other[j]];
      return false;
    }
  }
  return true;
}

struct Search {
  std::size_t d_a, d_b;
  std::vector<long> b{0}, c{0};
  Multiset rest;

  // The smallest unexplained exponent x must be b_new + c_1 or b_1 + c_new,
  // and both lists grow in nondecreasing order.
  bool run() {
    if (rest.empty()) return b.size() == d_a && c.size() == d_b;
    const long x = rest.begin()->first;
    if (b.size() < d_a && take_row(rest, x, c)) {
      b.push_back(x);
      if (run()) return true;
      b.pop_back();
      for (long y : c) ++rest[x + y];
    }
    if (c.size() < d_b && take_row(rest, x, b)) {
      c.push_back(x);
      if (run()) return true;
      c.pop_back();
      for (long y : b) ++rest[x + y];
    }
    return false;
  }
};

}  // namespace

std::optional<SumsetFactorization> factor_sumset(const SplittingType& a, int d_a, int d_b) {
  if (d_a < 1 || d_b < 1 || a.size() != static_cast<std::size_t>(d_a) * static_cast<std::size_t>(d_b))
    throw Error(ErrorKind::ShapeMismatch, "need length(a) = d_a * d_b");
  if (a.size() > kMaxSplittingRank) throw Error(ErrorKind::TooLarge, "splitting types are capped at rank 36");

  const long t = a.degrees().front();
  Search s{static_cast<std::size_t>(d_a), static_cast<std::size_t>(d_b), {0}, {0}, {}};
  for (long x : a.degrees()) ++s.rest[x - t];
  take(s.rest, 0);
  if (!s.run()) return std::nullopt;
  return SumsetFactorization{s.b, s.c, t};
}

bool parallelogram(const SplittingType& a) {
  if (a.size() != 4) throw Error(ErrorKind::WrongLength, "parallelogram needs four degrees");
  const auto& d = a.degrees();
  return d[0] + d[3] == d[1] + d[2];
}

}  // namespace egeo
