#include <gtest/gtest.h>

#include "decat/constructions.hpp"
#include "decat/errors.hpp"
#include "decat/morphism.hpp"
#include "support/fixtures.hpp"

using namespace decat;
using namespace fixtures;

TEST(Morphism, IdentityIsValidIso) {
  for (const auto& f : {K1(), L1(), A2(), P3(), C3(), D2(), M2()}) {
    auto id = identity(f);
    EXPECT_TRUE(validate_morphism(id).ok());
    EXPECT_TRUE(is_iso(id));
    EXPECT_EQ(inverse(id), id);
  }
}

TEST(Morphism, EdgeEndpointMismatchIsNotNatural) {
  // A2 -> A2 sending the edge to itself but swapping vertices.
  Morphism m(A2(), A2(), {{1, 0}, {0}});
  auto r = validate_morphism(m);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, "naturality");
  EXPECT_EQ(r.violations[0].witness, "e0");
}

TEST(Morphism, EmptySourceIsVacuouslyNatural) {
  auto z = initial(digraph_schema());
  Morphism m(z, C3(), {{}, {}});
  EXPECT_TRUE(validate_morphism(m).ok());
}

TEST(Morphism, IllTypedComponent) {
  Morphism m(K1(), A2(), {{5}, {}});
  auto r = validate_morphism(m);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, "ill-typed-component");
}

TEST(Morphism, ComposeAndInverse) {
  // Rotation of C3 by one step.
  Morphism rot(C3(), C3(), {{1, 2, 0}, {1, 2, 0}});
  ASSERT_TRUE(validate_morphism(rot).ok());
  auto twice = compose(rot, rot);
  EXPECT_EQ(twice.components(), (ElemTable{{2, 0, 1}, {2, 0, 1}}));
  EXPECT_EQ(compose(rot, twice), identity(C3()));
  EXPECT_EQ(inverse(rot), twice);
  EXPECT_THROW(compose(rot, identity(A2())), DomainError);
  Morphism collapse(A2(), L1(), {{0, 0}, {0}});
  EXPECT_FALSE(is_iso(collapse));
  EXPECT_THROW(inverse(collapse), DomainError);
}

TEST(Morphism, Image) {
  Morphism into(K1(), A2(), {{1}, {}});
  auto im = image(into);
  EXPECT_EQ(im[0], (std::vector<bool>{false, true}));
  EXPECT_EQ(im[1], (std::vector<bool>{false}));
}
