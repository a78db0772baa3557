#include <gtest/gtest.h>

#include "random_data.hpp"
#include "rootsign/fiber/fiber.hpp"

using namespace rootsign;
using namespace rootsign::fiber;

namespace {

ell::KodairaData kodaira(i64 p, ell::Kodaira::Kind kind, int n = 0) {
  ell::KodairaData k;
  k.p = ell::Int(p);
  k.type = {kind, n};
  return k;
}

ErrorKind kind_of(const std::string& text) {
  try {
    fiber_from_json(io::parse_text(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::zero_argument;
}

const AbelianGroup Z3({3});

}  // namespace

TEST(BuildFiber, Examples) {
  auto i3 = build_fiber(kodaira(2, ell::Kodaira::Kind::In, 3), Z3);
  EXPECT_EQ(i3.components.size(), 3u);
  EXPECT_EQ(i3.crossings.size(), 3u);
  EXPECT_EQ(i3.provenance, Provenance::pipeline);
  for (const auto& c : i3.components) {
    EXPECT_EQ(c.kind, ComponentKind::rational);
    EXPECT_EQ(c.euler_c, 0);
    EXPECT_EQ(i3.crossings_on(c.id).size(), 2u);
  }
  auto rep = validate_fiber(i3);
  EXPECT_TRUE(rep.valid()) << rep.describe();
  EXPECT_FALSE(rep.data_complete());

  auto good = build_fiber(kodaira(5, ell::Kodaira::Kind::I0), Z3);
  ASSERT_EQ(good.components.size(), 1u);
  EXPECT_EQ(good.components[0].kind, ComponentKind::elliptic);
  EXPECT_TRUE(good.crossings.empty());

  auto i1 = build_fiber(kodaira(2, ell::Kodaira::Kind::In, 1), Z3);
  ASSERT_EQ(i1.components.size(), 1u);
  EXPECT_EQ(i1.components[0].kind, ComponentKind::nodal);
  EXPECT_TRUE(i1.crossings.empty());
  EXPECT_TRUE(validate_fiber(i1).valid());

  auto two = build_fiber(kodaira(7, ell::Kodaira::Kind::In, 2), Z3);
  EXPECT_EQ(two.crossings.size(), 2u);
  EXPECT_TRUE(validate_fiber(two).valid());

  for (auto k : {ell::Kodaira::Kind::II, ell::Kodaira::Kind::IVStar, ell::Kodaira::Kind::InStar}) {
    try {
      build_fiber(kodaira(3, k), Z3);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::unsupported_type);
    }
  }
}

// the polygon's dual graph has as many vertices as edges
TEST(BuildFiber, PolygonEulerBookkeeping) {
  for (int n = 1; n <= 12; ++n) {
    auto fd = build_fiber(kodaira(2, ell::Kodaira::Kind::In, n), Z3);
    const int vertices = static_cast<int>(fd.components.size());
    const int edges = static_cast<int>(fd.crossings.size());
    EXPECT_EQ(vertices, n);
    int sum_cf = 0, rational_f = 0, weighted = 0;
    for (const auto& c : fd.components) {
      sum_cf += c.euler_c * c.f;
      if (c.kind == ComponentKind::rational) rational_f += c.f;
      EXPECT_EQ(c.euler_c, 0);
    }
    for (const auto& z : fd.crossings) weighted += z.deg;
    EXPECT_EQ(sum_cf + 2 * weighted, 2 * rational_f) << n;
    if (n >= 2) {
      EXPECT_EQ(vertices - edges, 0);
    }
    EXPECT_TRUE(validate_fiber(fd).valid());
  }
}

TEST(ValidateFiber, RejectsBadData) {
  auto fd = build_fiber(kodaira(2, ell::Kodaira::Kind::In, 3), Z3);
  auto bad_c = fd;
  bad_c.components[0].euler_c = 1;
  EXPECT_FALSE(validate_fiber(bad_c).valid());

  auto loop = fd;
  loop.crossings[0].between = {1, 1};
  EXPECT_FALSE(validate_fiber(loop).valid());

  auto unknown = fd;
  unknown.crossings[0].between = {0, 7};
  EXPECT_FALSE(validate_fiber(unknown).valid());

  // inertia at a crossing must contain that of its components
  auto inert = build_fiber(kodaira(7, ell::Kodaira::Kind::In, 2), Z3);
  inert.components[0].inertia = Subgroup::whole(Z3);
  inert.crossings[0].inertia = Subgroup::trivial(Z3);
  EXPECT_FALSE(validate_fiber(inert).valid());
  inert.crossings[0].inertia = Subgroup::whole(Z3);
  inert.crossings[1].inertia = Subgroup::whole(Z3);
  EXPECT_TRUE(validate_fiber(inert).valid()) << validate_fiber(inert).describe();

  // p = 3 and inertia of order 3 is wild
  auto wild = build_fiber(kodaira(3, ell::Kodaira::Kind::In, 2), Z3);
  wild.crossings[0].inertia = Subgroup::whole(Z3);
  EXPECT_FALSE(validate_fiber(wild).valid());

  // order 3 does not divide 5 - 1
  auto gen = build_fiber(kodaira(5, ell::Kodaira::Kind::In, 2), Z3);
  gen.crossings[0].inertia = Subgroup::whole(Z3);
  gen.crossings[0].tame_generator = Z3.element({1});
  EXPECT_FALSE(validate_fiber(gen).valid());
  gen.p = 7;
  EXPECT_TRUE(validate_fiber(gen).valid());
  gen.crossings[0].tame_generator = Z3.element({0});
  EXPECT_FALSE(validate_fiber(gen).valid());

  auto other = build_fiber(kodaira(7, ell::Kodaira::Kind::In, 2), Z3);
  other.crossings[0].inertia = Subgroup::whole(AbelianGroup({2}));
  EXPECT_FALSE(validate_fiber(other).valid());

  auto delta = build_fiber(kodaira(7, ell::Kodaira::Kind::In, 2), Z3);
  delta.components[0].delta_data = std::vector<DeltaEntry>{{0, {0}, std::nullopt}};
  EXPECT_FALSE(validate_fiber(delta).valid());
}

TEST(ValidateFiber, MissingDataListsEveryField) {
  auto fd = build_fiber(kodaira(13, ell::Kodaira::Kind::In, 3), Z3);
  auto rep = validate_fiber(fd);
  EXPECT_EQ(rep.missing.size(), 3u + 3u * 3u);
  std::mt19937_64 rng(1);
  auto full = testdata::random_complete_fiber(Z3, {}, rng);
  auto r2 = validate_fiber(full);
  EXPECT_TRUE(r2.valid()) << r2.describe();
  EXPECT_TRUE(r2.data_complete());
}

TEST(ValidateFiber, RandomFibersAreValid) {
  std::mt19937_64 rng(9);
  for (int s = 0; s < 200; ++s) {
    AbelianGroup G(testdata::small_groups()[static_cast<std::size_t>(s) % testdata::small_groups().size()]);
    auto v = testdata::random_valid_rep(G, rng);
    auto fd = testdata::random_complete_fiber(G, {v}, rng);
    auto r = validate_fiber(fd);
    EXPECT_TRUE(r.valid()) << r.describe();
    EXPECT_TRUE(r.data_complete());
    auto irr = testdata::random_irreducible_fiber(G, rng);
    EXPECT_TRUE(validate_fiber(irr).valid()) << validate_fiber(irr).describe();
  }
}

TEST(FiberJson, RoundTrip) {
  auto fd = build_fiber(kodaira(2, ell::Kodaira::Kind::In, 3), Z3);
  EXPECT_EQ(fiber_from_json(io::parse_text(to_json(fd).dump())), fd);
  std::mt19937_64 rng(4);
  for (int s = 0; s < 50; ++s) {
    AbelianGroup G(testdata::small_groups()[static_cast<std::size_t>(s) % testdata::small_groups().size()]);
    auto full = testdata::random_complete_fiber(G, {}, rng);
    full.components[0].kappa_data = std::vector<KappaEntry>{{{2, 1}, 2}};
    full.components[0].delta_data->at(0).chi = LocalChar{2, 1};
    EXPECT_EQ(fiber_from_json(io::parse_text(to_json(full).dump())), full);
  }
}

TEST(FiberJson, Strictness) {
  EXPECT_EQ(kind_of(R"({"group":[3],"components":[],"crossings":[]})"), ErrorKind::parse_error);
  EXPECT_EQ(kind_of(R"({"p":2,"group":[3],"components":[],"crossings":[],"colour":1})"), ErrorKind::parse_error);
  EXPECT_EQ(kind_of(R"({"p":4,"group":[3],"components":[],"crossings":[]})"), ErrorKind::parse_error);
  EXPECT_EQ(kind_of(R"({"p":2,"group":[3],"components":[{"id":0,"kind":"conic","f":1,"euler_c":2}],"crossings":[]})"),
            ErrorKind::parse_error);
  EXPECT_EQ(kind_of(R"({"p":2,"group":[3],"components":[],"crossings":[{"id":0,"between":[0],"deg":1}]})"), ErrorKind::parse_error);
  EXPECT_EQ(kind_of(R"({"p":2,"group":[3],"components":[],"crossings":[{"id":0,"between":[0,1],"deg":1,"frobenius":[1,1]}]})"),
            ErrorKind::parse_error);
  try {
    fiber_from_json(io::parse_text(R"({"p":2,"group":[3],"components":[{"id":0,"kind":"rational","f":1}],"crossings":[]})"));
    FAIL();
  } catch (const Error& e) {
    const std::string w = e.what();
    EXPECT_NE(w.find("/components/0"), std::string::npos) << w;
    EXPECT_NE(w.find("euler_c"), std::string::npos) << w;
  }

  const char* manual = R"({"p":7,"group":[2,2],"provenance":"manual",
    "components":[{"id":0,"kind":"rational","f":1,"euler_c":1,"inertia":[[1,1]]},
                  {"id":1,"kind":"rational","f":1,"euler_c":1,"inertia":[[1,1]]}],
    "crossings":[{"id":0,"between":[0,1],"deg":1,"inertia":[[1,1]],"frobenius":[1,0],"tame_generator":[1,1]}]})";
  auto fd = fiber_from_json(io::parse_text(manual));
  EXPECT_EQ(fd.provenance, Provenance::manual);
  EXPECT_TRUE(validate_fiber(fd).valid()) << validate_fiber(fd).describe();
  EXPECT_EQ(fd.crossings[0].inertia->order(), 2);
}
