#include "gkm/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "gkm/errors.hpp"

namespace gkm {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::Dminus: return "Dminus";
    case Family::Custom: return "custom";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "A") return Family::A;
  if (name == "B") return Family::B;
  if (name == "C") return Family::C;
  if (name == "D") return Family::D;
  if (name == "Dminus" || name == "D-") return Family::Dminus;
  if (name == "custom") return Family::Custom;
  throw UsageError("unknown family '" + std::string(name) + "' (expected A, B, C, D, Dminus)");
}

GroupFamily group_family_of(Family f) {
  switch (f) {
    case Family::A: return GroupFamily::A;
    case Family::B:
    case Family::C: return GroupFamily::BC;
    case Family::D: return GroupFamily::Dplus;
    case Family::Dminus: return GroupFamily::Dminus;
    case Family::Custom: break;
  }
  throw UsageError("custom graphs have no classical vertex family");
}

SignedPermutation::SignedPermutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    int a = std::abs(x);
    if (a < 1 || a > n || seen[a - 1]) throw UsageError("not a signed permutation: " + to_string());
    seen[a - 1] = true;
  }
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return SignedPermutation(std::move(v));
}

SignedPermutation SignedPermutation::transposition(std::size_t n, int i, int j) {
  auto w = identity(n);
  std::swap(w.images_.at(i - 1), w.images_.at(j - 1));
  return w;
}

SignedPermutation SignedPermutation::signed_transposition(std::size_t n, int i, int j) {
  auto w = identity(n);
  w.images_.at(i - 1) = -j;
  w.images_.at(j - 1) = -i;
  return w;
}

SignedPermutation SignedPermutation::sign_change(std::size_t n, int i) {
  auto w = identity(n);
  w.images_.at(i - 1) = -i;
  return w;
}

SignedPermutation SignedPermutation::parse(std::string_view text) {
  std::string s(text);
  std::vector<int> v;
  bool has_sep = std::any_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == ',' || c == '-'; });
  if (!has_sep) {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw UsageError("bad one-line notation: '" + s + "'");
      v.push_back(c - '0');
    }
  } else {
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
      char* end = nullptr;
      long x = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw UsageError("bad one-line notation: '" + std::string(text) + "'");
      v.push_back(static_cast<int>(x));
    }
  }
  if (v.empty()) throw UsageError("empty one-line notation");
  return SignedPermutation(std::move(v));
}

int SignedPermutation::operator()(int i) const {
  int a = std::abs(i);
  if (a < 1 || a > static_cast<int>(images_.size())) throw UsageError("index out of range");
  int x = images_[a - 1];
  return i > 0 ? x : -x;
}

bool SignedPermutation::is_plain() const {
  return std::all_of(images_.begin(), images_.end(), [](int x) { return x > 0; });
}

std::size_t SignedPermutation::negative_count() const {
  return static_cast<std::size_t>(std::count_if(images_.begin(), images_.end(), [](int x) { return x < 0; }));
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    int x = images_[i];
    int idx = static_cast<int>(i) + 1;
    v[std::abs(x) - 1] = x > 0 ? idx : -idx;
  }
  return SignedPermutation(std::move(v));
}

std::string SignedPermutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(images_[i]);
  }
  return s;
}

SignedPermutation compose(const SignedPermutation& w, const SignedPermutation& v) {
  if (w.size() != v.size()) throw UsageError("compose: arity mismatch");
  std::vector<int> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = w(v.images()[i]);
  return SignedPermutation(std::move(r));
}

LinearForm apply_to_form(const SignedPermutation& w, const LinearForm& form) {
  if (w.size() != form.n_vars()) throw UsageError("apply_to_form: arity mismatch");
  std::vector<long long> c(form.n_vars(), 0);
  for (std::size_t i = 0; i < form.n_vars(); ++i) {
    int x = w.images()[i];
    c[std::abs(x) - 1] += x > 0 ? form[i] : -form[i];
  }
  return LinearForm(std::move(c));
}

std::vector<SignedPermutation> enumerate(GroupFamily family, std::size_t n) {
  if (n == 0) throw UsageError("enumerate: rank must be at least 1");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<SignedPermutation> out;
  do {
    if (family == GroupFamily::A) {
      out.emplace_back(perm);
      continue;
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::size_t negs = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (family == GroupFamily::Dplus && negs % 2 != 0) continue;
      if (family == GroupFamily::Dminus && negs % 2 != 1) continue;
      std::vector<int> v = perm;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) v[i] = -v[i];
      out.emplace_back(std::move(v));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinearForm> root_system(Family family, std::size_t n) {
  std::vector<LinearForm> roots;
  auto push_pm = [&](LinearForm f) {
    roots.push_back(f);
    roots.push_back(-f);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<long long> d(n, 0), s(n, 0);
      d[i] = 1, d[j] = -1;
      s[i] = 1, s[j] = 1;
      push_pm(LinearForm(d));
      if (family != Family::A) push_pm(LinearForm(s));
    }
  if (family == Family::B || family == Family::C)
    for (std::size_t i = 0; i < n; ++i) push_pm(LinearForm::basis(n, i, family == Family::B ? 1 : 2));
  if (family == Family::Custom) throw UsageError("root_system: custom family has no fixed roots");
  return roots;
}

OrthogonalMap::OrthogonalMap(std::size_t n) : n_(n), m_(n * n) {
  for (std::size_t i = 0; i < n; ++i) m_[i * n + i] = 1;
}

OrthogonalMap OrthogonalMap::reflection(const LinearForm& root) {
  const std::size_t n = root.n_vars();
  if (root.is_zero()) throw UsageError("reflection in the zero vector");
  OrthogonalMap r(n);
  mpz_class norm = 0;
  for (std::size_t i = 0; i < n; ++i) norm += mpz_class(static_cast<long>(root[i])) * static_cast<long>(root[i]);
  // sigma(x) = x - 2 (x, a) / (a, a) a; column j is sigma(e_j).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v(mpz_class(static_cast<long>(2 * root[i] * root[j])), norm);
      v.canonicalize();
      r(i, j) -= v;
    }
  return r;
}

OrthogonalMap OrthogonalMap::from_signed_permutation(const SignedPermutation& w) {
  const std::size_t n = w.size();
  OrthogonalMap m(n);
  for (auto& x : m.m_) x = 0;
  for (std::size_t j = 0; j < n; ++j) {
    int x = w.images()[j];
    m(static_cast<std::size_t>(std::abs(x) - 1), j) = x > 0 ? 1 : -1;
  }
  return m;
}

std::optional<LinearForm> OrthogonalMap::apply(const LinearForm& form) const {
  if (form.n_vars() != n_) throw UsageError("OrthogonalMap::apply: arity mismatch");
  std::vector<long long> c(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * static_cast<long>(form[j]);
    if (s.get_den() != 1 || !s.get_num().fits_slong_p()) return std::nullopt;
    c[i] = s.get_num().get_si();
  }
  return LinearForm(std::move(c));
}

std::optional<SignedPermutation> OrthogonalMap::as_signed_permutation() const {
  std::vector<int> v(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    int found = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const mpq_class& x = (*this)(i, j);
      if (x == 0) continue;
      if (found || (x != 1 && x != -1)) return std::nullopt;
      found = x > 0 ? static_cast<int>(i) + 1 : -(static_cast<int>(i) + 1);
    }
    if (!found) return std::nullopt;
    v[j] = found;
  }
  return SignedPermutation(std::move(v));
}

std::string OrthogonalMap::key() const {
  std::string s;
  for (const auto& x : m_) {
    s += x.get_str();
    s += ',';
  }
  return s;
}

OrthogonalMap operator*(const OrthogonalMap& a, const OrthogonalMap& b) {
  if (a.size() != b.size()) throw UsageError("OrthogonalMap product: arity mismatch");
  const std::size_t n = a.size();
  OrthogonalMap p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (a(i, k) != 0 && b(k, j) != 0) s += a(i, k) * b(k, j);
      p(i, j) = s;
    }
  return p;
}

std::vector<OrthogonalMap> generate_from_reflections(const std::vector<LinearForm>& roots,
                                                     std::size_t max_order) {
  if (roots.empty()) throw UsageError("generate_from_reflections: no roots");
  const std::size_t n = roots.front().n_vars();
  std::vector<OrthogonalMap> gens;
  for (const auto& r : roots) {
    if (r.n_vars() != n) throw UsageError("generate_from_reflections: roots of different arity");
    gens.push_back(OrthogonalMap::reflection(r));
  }
  std::vector<OrthogonalMap> group{OrthogonalMap(n)};
  std::unordered_set<std::string> seen{group.front().key()};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : gens) {
      OrthogonalMap x = group[head] * g;
      if (seen.insert(x.key()).second) {
        if (group.size() >= max_order)
          throw ResourceError("reflection group exceeds " + std::to_string(max_order) + " elements");
        group.push_back(std::move(x));
      }
    }
  }
  return group;
}

}  // namespace gkm
