#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "corpus.hpp"
#include "steiner_ecc/families.hpp"
#include "steiner_ecc/tree.hpp"

using namespace steiner_ecc;

namespace {
errc kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return errc::invalid_parameters;
}
}  // namespace

TEST_CASE("from_edge_list validates structure") {
    CHECK(Tree::from_edge_list(2, {{0, 1}}).n() == 2);
    CHECK(testutil::t5().n() == 5);

    CHECK(kind_of([] { Tree::from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}}); }) ==
          errc::wrong_edge_count);
    CHECK(kind_of([] { Tree::from_edge_list(4, {{0, 1}, {1, 2}, {2, 0}}); }) ==
          errc::disconnected);
    CHECK(kind_of([] { Tree::from_edge_list(3, {{0, 1}, {1, 1}}); }) == errc::self_loop);
    CHECK(kind_of([] { Tree::from_edge_list(3, {{0, 1}, {1, 0}}); }) == errc::duplicate_edge);
    CHECK(kind_of([] { Tree::from_edge_list(3, {{0, 1}, {1, 3}}); }) ==
          errc::vertex_out_of_range);
    CHECK(kind_of([] { Tree::from_edge_list(3, {{0, 1}}); }) == errc::wrong_edge_count);
}

TEST_CASE("adjacency is sorted and symmetric") {
    Tree t = Tree::from_edge_list(4, {{3, 0}, {2, 0}, {0, 1}});
    CHECK(t.neighbors(0) == std::vector<Vertex>{1, 2, 3});
    CHECK(t.degree(0) == 3);
    CHECK(t.has_edge(3, 0));
    CHECK_FALSE(t.has_edge(1, 2));
    CHECK(t.leaves() == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("distance") {
    Tree p4 = generate_tree(FamilySpec::path(4));
    CHECK(distance(p4, 0, 3) == 3);
    CHECK(distance(testutil::t5(), 0, 4) == 3);
    CHECK(distance(testutil::t5(), 2, 2) == 0);
    CHECK_THROWS_AS(distance(p4, 0, 9), error);
}

TEST_CASE("longest_path_from") {
    Tree star = generate_tree(FamilySpec::star(5));
    auto [slen, spath] = longest_path_from(star, 0);
    CHECK(slen == 1);

    auto [len, path] = longest_path_from(testutil::t5(), 0);
    CHECK(len == 3);
    CHECK(path.vertices == std::vector<Vertex>{0, 1, 3, 4});

    Tree p7 = generate_tree(FamilySpec::path(7));
    CHECK(longest_path_from(p7, 0).first == 6);

    // length always matches the eccentricity from a plain distance scan
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Tree t = random_tree(40, seed);
        for (Vertex v = 0; v < t.n(); ++v) {
            auto dist = t.distances_from(v);
            int ecc = *std::max_element(dist.begin(), dist.end());
            auto [l, p] = longest_path_from(t, v);
            CHECK(l == ecc);
            CHECK(p.vertices.front() == v);
            CHECK(p.length() == l);
            validate_path(t, p);
        }
    }
}

TEST_CASE("path_eccentricity") {
    Tree t = testutil::t5();
    TreePath p;
    p.vertices = {0, 1, 3, 4};
    auto [ecc, witness] = path_eccentricity(t, p);
    CHECK(ecc == 1);
    CHECK(witness == 2);

    Tree p6 = generate_tree(FamilySpec::path(6));
    TreePath whole;
    for (Vertex v = 0; v < 6; ++v) whole.vertices.push_back(v);
    CHECK(path_eccentricity(p6, whole).first == 0);

    Tree star = generate_tree(FamilySpec::star(5));
    TreePath edge;
    edge.vertices = {0, 1};
    CHECK(path_eccentricity(star, edge).first == 1);

    TreePath bogus;
    bogus.vertices = {0, 4};
    CHECK(kind_of([&] { path_eccentricity(t, bogus); }) == errc::not_a_path);
}

TEST_CASE("diameter, radius, center") {
    auto info = diameter_radius_center(testutil::t5());
    CHECK(info.diameter == 3);
    CHECK(info.radius == 2);
    CHECK(info.center == std::vector<Vertex>{1, 3});

    auto p5 = diameter_radius_center(generate_tree(FamilySpec::path(5)));
    CHECK(p5.diameter == 4);
    CHECK(p5.radius == 2);
    CHECK(p5.center == std::vector<Vertex>{2});

    auto star = diameter_radius_center(generate_tree(FamilySpec::star(8)));
    CHECK(star.diameter == 2);
    CHECK(star.radius == 1);
    CHECK(star.center == std::vector<Vertex>{0});

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Tree t = random_tree(25, seed);
        auto i = diameter_radius_center(t);
        int dmax = 0;
        int dmin = t.n();
        for (Vertex v = 0; v < t.n(); ++v) {
            int e = longest_path_from(t, v).first;
            dmax = std::max(dmax, e);
            dmin = std::min(dmin, e);
        }
        CHECK(i.diameter == dmax);
        CHECK(i.radius == dmin);
        CHECK((i.center.size() == 1 || i.center.size() == 2));
        if (i.center.size() == 2) CHECK(t.has_edge(i.center[0], i.center[1]));
        CHECK(i.diameter == 2 * i.radius - (i.center.size() == 2 ? 1 : 0));
    }
}

TEST_CASE("matching and independence numbers") {
    CHECK(matching_number(generate_tree(FamilySpec::path(4))) == 2);
    CHECK(independence_number(generate_tree(FamilySpec::path(4))) == 2);
    CHECK(matching_number(generate_tree(FamilySpec::star(9))) == 1);
    CHECK(independence_number(generate_tree(FamilySpec::star(9))) == 8);

    Tree t85 = generate_tree(FamilySpec::t_nm(8, 5));
    CHECK(matching_number(t85) == 3);
    CHECK(independence_number(t85) == 5);

    // Konig duality on trees
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Tree t = random_tree(3 + static_cast<int>(seed % 40), seed);
        CHECK(matching_number(t) + independence_number(t) == t.n());
    }
}

TEST_CASE("prufer codes") {
    Tree e = prufer_decode({}, 2);
    CHECK(e.edges() == std::vector<Edge>{{0, 1}});
    Tree s = prufer_decode({1, 1, 1}, 5);
    CHECK(s.degree(1) == 4);

    CHECK(kind_of([] { prufer_decode({5}, 3); }) == errc::vertex_out_of_range);

    // round-trip over every sequence for n = 6
    int count = 0;
    testutil::for_each_labeled_tree(6, [&](const Tree& t) {
        ++count;
        auto seq = prufer_encode(t);
        CHECK(prufer_decode(seq, 6) == t);
    });
    CHECK(count == 1296);
}

TEST_CASE("random trees are reproducible and uniform") {
    CHECK(random_tree(1, 3).n() == 1);
    CHECK(random_tree(37, 9) == random_tree(37, 9));
    CHECK_FALSE(random_tree(37, 9) == random_tree(37, 10));
    Tree t3 = random_tree(3, 123);
    CHECK(t3.max_degree() == 2);

    // uniformity over the 125 labeled trees on 5 vertices: each count stays
    // within 5 sigma of the expectation (lambda = 800, sigma ~ 28.2)
    std::map<std::vector<int>, int> counts;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i)
        counts[prufer_encode(random_tree(5, 977 + static_cast<std::uint64_t>(i)))]++;
    CHECK(counts.size() == 125);
    const double expected = samples / 125.0;
    const double sigma = std::sqrt(expected * (1.0 - 1.0 / 125.0));
    for (const auto& [seq, c] : counts)
        CHECK(std::abs(c - expected) <= 5 * sigma);
}

TEST_CASE("canonical form and isomorphism") {
    Tree a = Tree::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}});
    Tree b = Tree::from_edge_list(4, {{2, 0}, {2, 1}, {2, 3}});
    CHECK(isomorphic(a, b));
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK_FALSE(isomorphic(a, generate_tree(FamilySpec::path(4))));
    CHECK_FALSE(isomorphic(a, generate_tree(FamilySpec::star(5))));
    CHECK(isomorphic(generate_tree(FamilySpec::broom(10, 4)),
                     generate_tree(FamilySpec::broom(10, 4))));
}
