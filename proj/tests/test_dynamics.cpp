#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coxkit/dynamics.hpp"
#include "coxkit/parse.hpp"

using namespace coxkit;

namespace {

Word random_word(unsigned rank, unsigned len, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> d(0, rank - 1);
  Word w(len);
  for (auto& s : w) s = d(rng);
  return w;
}

Word power(const Word& w, unsigned p) {
  Word out;
  for (unsigned i = 0; i < p; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

}  // namespace

TEST_CASE("spherical groups only have periodic roots") {
  std::mt19937 rng(31);
  for (const char* spec : {"A3", "B3"}) {
    Realization r(parse_spec(spec));
    auto roots = r.positive_roots(20);
    for (int iter = 0; iter < 12; ++iter) {
      Word w = random_word(r.rank(), 1 + iter % 8, rng);
      OrbitScanner scan(r, w);
      REQUIRE(scan.finite_order().has_value());
      for (const auto& alpha : roots.roots) {
        auto p = scan.parity(alpha);
        REQUIRE(p.kind == ParityKind::Periodic);
        REQUIRE(*scan.finite_order() % p.period == 0);
      }
    }
  }
}

TEST_CASE("the infinite dihedral orbit of alpha_s under st is odd") {
  Realization at1(parse_spec("~A1"));
  Word w{0, 1};
  auto p = root_parity(at1, w, at1.simple_root(0));
  REQUIRE(p.kind == ParityKind::Odd);
  REQUIRE(p.separations() == 1);
  REQUIRE(p.separation_indices == std::vector<long>{-1});
  // the power is odd too, with the separation shifted to m = -1
  auto p2 = root_parity(at1, power(w, 2), at1.simple_root(0));
  REQUIRE(p2.kind == ParityKind::Odd);
  // alpha_t separates w^0 and w^1
  auto pt = root_parity(at1, w, at1.simple_root(1));
  REQUIRE(pt.kind == ParityKind::Odd);
  REQUIRE(pt.separation_indices == std::vector<long>{0});
}

TEST_CASE("trichotomy: determinate verdicts are mutually exclusive") {
  std::mt19937 rng(77);
  for (const char* spec : {"A3", "B3", "~A1", "~A2"}) {
    Realization r(parse_spec(spec));
    auto roots = r.positive_roots(6);
    for (int iter = 0; iter < 10; ++iter) {
      Word w = random_word(r.rank(), 1 + iter % 6, rng);
      OrbitScanner scan(r, w);
      for (const auto& alpha : roots.roots) {
        auto p = scan.parity(alpha);
        switch (p.kind) {
          case ParityKind::Periodic:
            REQUIRE(p.period >= 1);
            REQUIRE(p.separation_indices.empty());
            break;
          case ParityKind::Even: REQUIRE(p.separations() % 2 == 0); break;
          case ParityKind::Odd: REQUIRE(p.separations() % 2 == 1); break;
          case ParityKind::Unknown: break;
        }
      }
    }
  }
}

TEST_CASE("parity is invariant under powers") {
  std::mt19937 rng(123);
  unsigned checked = 0;
  for (const char* spec : {"A3", "B3", "~A1", "~A2"}) {
    Realization r(parse_spec(spec));
    auto roots = r.positive_roots(5);
    for (int iter = 0; iter < 8; ++iter) {
      Word w = random_word(r.rank(), 1 + iter % 5, rng);
      std::uniform_int_distribution<unsigned> pd(2, 5);
      unsigned p = pd(rng);
      OrbitScanner s1(r, w), sp(r, power(w, p));
      for (const auto& alpha : roots.roots) {
        auto v1 = s1.parity(alpha);
        auto vp = sp.parity(alpha);
        if (v1.kind == ParityKind::Unknown || vp.kind == ParityKind::Unknown) continue;
        REQUIRE(v1.kind == vp.kind);
        ++checked;
      }
    }
  }
  REQUIRE(checked >= 100);
}

TEST_CASE("odd roots of the infinite dihedral group") {
  Realization at1(parse_spec("~A1"));
  auto odd = odd_roots(at1, {0, 1}, 5);
  REQUIRE(odd.scanned >= 5);
  REQUIRE(odd.roots.size() == odd.scanned);
  REQUIRE(odd.unknown_count == 0);
  // spherical: no odd roots at all
  Realization b3(parse_spec("B3"));
  auto none = odd_roots(b3, {0, 1, 2}, 10);
  REQUIRE(none.roots.empty());
  REQUIRE(none.unknown_count == 0);
}

TEST_CASE("essentiality strategy chain") {
  Realization a2(parse_spec("A2"));
  // proper support
  auto v1 = essentiality(a2, {0});
  REQUIRE(v1.kind == EssentialityKind::NotEssential);
  REQUIRE(v1.witness_u.empty());
  REQUIRE(v1.witness_x == std::vector<unsigned>{0});
  // identity element
  auto vid = essentiality(a2, {});
  REQUIRE(vid.kind == EssentialityKind::NotEssential);
  REQUIRE(vid.witness_x.empty());
  // full support but conjugate into a parabolic
  auto v2 = essentiality(a2, {0, 1, 0});
  REQUIRE(v2.kind == EssentialityKind::NotEssential);
  REQUIRE(v2.witness_x.size() == 1);
  // spherical coxeter elements: trivial fixed space
  for (const char* spec : {"A2", "B3", "H4", "F4"}) {
    Realization r(parse_spec(spec));
    auto v = essentiality(r, r.coxeter_word());
    REQUIRE(v.kind == EssentialityKind::Essential);
    REQUIRE(v.certificate == EssentialCertificate::FiniteFixedSpaceTrivial);
  }
  // affine coxeter elements: odd roots generate
  for (const char* spec : {"~A1", "~A2", "~A3"}) {
    Realization r(parse_spec(spec));
    auto v = essentiality(r, r.coxeter_word());
    REQUIRE(v.kind == EssentialityKind::Essential);
    REQUIRE(v.certificate == EssentialCertificate::OddRootsGenerate);
  }
  // powers stay essential (Coxeter element squared in ~A2)
  {
    Realization r(parse_spec("~A2"));
    Word c = r.coxeter_word();
    auto v = essentiality(r, power(c, 2));
    REQUIRE(v.kind == EssentialityKind::Essential);
  }
  REQUIRE_THROWS_AS(essentiality(Realization(parse_spec("A1 x A1")), {0}), PreconditionError);
}

TEST_CASE("essentiality of powers agrees when determinate") {
  std::mt19937 rng(9);
  unsigned agreements = 0;
  for (const char* spec : {"~A1", "~A2"}) {
    Realization r(parse_spec(spec));
    for (int iter = 0; iter < 6; ++iter) {
      Word w = random_word(r.rank(), 2 + iter % 4, rng);
      std::uniform_int_distribution<unsigned> pd(2, 4);
      auto v1 = essentiality(r, w);
      auto vp = essentiality(r, power(w, pd(rng)));
      if (v1.kind == EssentialityKind::Unknown || vp.kind == EssentialityKind::Unknown) continue;
      REQUIRE(v1.kind == vp.kind);
      ++agreements;
    }
  }
  REQUIRE(agreements >= 6);
}

TEST_CASE("witness words verify") {
  Realization b3(parse_spec("B3"));
  // a reflection along a non-simple root: full support, not essential
  Word w{0, 1, 0};
  auto v = essentiality(b3, w);
  if (v.kind == EssentialityKind::NotEssential && !v.witness_u.empty()) {
    Word conj;
    for (auto it = v.witness_u.rbegin(); it != v.witness_u.rend(); ++it) conj.push_back(*it);
    conj.insert(conj.end(), w.begin(), w.end());
    conj.insert(conj.end(), v.witness_u.begin(), v.witness_u.end());
    auto supp = b3.support(conj);
    REQUIRE(supp.size() < b3.rank());
    for (unsigned s : supp)
      REQUIRE(std::find(v.witness_x.begin(), v.witness_x.end(), s) != v.witness_x.end());
  }
}

TEST_CASE("reflection basis products have trivial fixed space") {
  Realization a2(parse_spec("A2"));
  REQUIRE(reflection_basis_product_check(a2, {a2.simple_root(0), a2.simple_root(1)}));
  auto beta = a2.apply_word({0}, a2.simple_root(1));
  REQUIRE(reflection_basis_product_check(a2, {a2.simple_root(0), beta}));
  // extension of ~A1: three simple roots of the extended graph
  auto ext = nondegenerate_extension(parse_spec("~A1"));
  Realization re(ext.extended);
  REQUIRE(reflection_basis_product_check(
      re, {re.simple_root(0), re.simple_root(1), re.simple_root(2)}));
  // degenerate form is rejected
  Realization at1(parse_spec("~A1"));
  REQUIRE_THROWS_AS(
      reflection_basis_product_check(at1, {at1.simple_root(0), at1.simple_root(1)}),
      PreconditionError);
  // dependent roots are rejected
  REQUIRE_THROWS_AS(reflection_basis_product_check(a2, {a2.simple_root(0), a2.simple_root(0)}),
                    PreconditionError);
}
