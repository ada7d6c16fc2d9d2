#include "cwb/reports.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>

using namespace cwb;
using io::json;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("cwb_test_" + name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("scalar JSON forms")
{
    CHECK(io::scalar_from_json(json("3/4")) == Scalar(Rational(3, 4)));
    CHECK(io::scalar_from_json(json(-2)) == Scalar(-2));
    CHECK(io::scalar_from_json(json::array({"1/2", "-1"})) == Scalar::parse("1/2", "-1"));
    CHECK(io::scalar_to_json(Scalar::parse("-5/3", "2")) == json::array({"-5/3", "2"}));
    CHECK_THROWS_AS(io::scalar_from_json(json(0.5)), InputError);
}

TEST_CASE("algebra files round-trip")
{
    for (const char* name : {"matrix:2", "semilattice:chain2", "sum:matrix:2+scalar"}) {
        auto a = builtin::by_name(name);
        json j = io::algebra_to_json(*a);
        auto b = io::algebra_from_json(j);
        CHECK(b->name() == a->name());
        CHECK(b->structure_constants() == a->structure_constants());
        REQUIRE(splitting_data(*b).has_value());
        CHECK(splitting_data(*b)->rho == splitting_data(*a)->rho);
    }
}

TEST_CASE("algebra file with a rho matrix")
{
    auto p = temp_file("scalar_rho.json", R"({"dim": 1, "labels": ["u"],
        "structure_constants": [[0, 0, 0, "1", "0"]], "rho_matrix": [["1"]]})");
    auto a = io::load_algebra("file:" + p.string());
    CHECK(a->dim() == 1);
    auto s = splitting_data(*a);
    REQUIRE(s.has_value());
    CHECK(s->K == Catch::Approx(1.0));
}

TEST_CASE("malformed algebra files are input errors")
{
    CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"labels": []})")), InputError);
    CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"dim": 2, "structure_constants": [[0, 0, 5, "1"]]})")),
                    InputError);
    auto bad = temp_file("nonassoc.json", R"({"dim": 2, "structure_constants": [[0,0,1,"1","0"],[1,0,1,"1","0"]]})");
    CHECK_THROWS_WITH(io::load_algebra("file:" + bad.string()), Catch::Matchers::ContainsSubstring("(0,0,0,1)"));
    CHECK_THROWS_AS(io::load_algebra("file:/nonexistent/x.json"), InputError);
    auto garbage = temp_file("garbage.json", "{ not json");
    CHECK_THROWS_AS(io::load_algebra("file:" + garbage.string()), InputError);
}

TEST_CASE("cochain files round-trip")
{
    auto m2 = builtin::matrix(2);
    Cochain psi = random_cochain(m2, 2, 3, 4);
    json j = io::cochain_to_json(psi);
    auto p = temp_file("cochain.json", j.dump());
    Cochain back = io::load_cochain(p.string(), nullptr);
    CHECK(back.entries() == psi.entries());
    CHECK(back.degree() == 2);
    CHECK(back.algebra()->name() == "matrix:2");

    auto tau = temp_file("trace.json", R"({"algebra": "matrix:2", "degree": -1,
        "entries": [[[0], "1", "0"], [[3], "1", "0"]]})");
    Cochain t = io::load_cochain(tau.string(), nullptr);
    CHECK(t.degree() == -1);
    CHECK(t.entries() == Vec{Scalar(1), Scalar(0), Scalar(0), Scalar(1)});

    auto inline_alg = temp_file("inline.json", R"({"algebra": {"dim": 1, "structure_constants": [[0,0,0,"1","0"]]},
        "degree": 1, "entries": [[[0, 0], "2/3", "0"]]})");
    Cochain c = io::load_cochain(inline_alg.string(), nullptr);
    CHECK(c.at({0, 0}) == Scalar(Rational(2, 3)));
}

TEST_CASE("malformed cochain files are input errors")
{
    auto m2 = builtin::matrix(2);
    CHECK_THROWS_AS(io::cochain_from_json(json::parse(R"({"degree": 1, "entries": [[[0], "1"]]})"), m2), InputError);
    CHECK_THROWS_AS(io::cochain_from_json(json::parse(R"({"degree": 1, "entries": [[[0, 9], "1"]]})"), m2), InputError);
    CHECK_THROWS_AS(io::cochain_from_json(json::parse(R"({"entries": []})"), m2), InputError);
    CHECK_THROWS_AS(io::cochain_from_json(json::parse(R"({"degree": -1, "entries": [[[1], "1"]]})"), m2), InputError);
}

TEST_CASE("certificate JSON carries exact entries and both bound sets")
{
    Workbench w(builtin::matrix(2));
    Cobounder cb(w, 2);
    Cochain psi = trace_power(w.algebra_ptr(), Vec{Scalar(1), Scalar(0), Scalar(0), Scalar(1)}, 2);
    json j = io::certificate_to_json(cb.certify(psi), w.algebra());
    CHECK(j["parity"] == "even");
    CHECK(j["residual_zero"] == true);
    CHECK(j["tau"]["entries"] == json::parse(R"([[[0], "1", "0"], [[3], "1", "0"]])"));
    CHECK(j.contains("bound_K"));
    CHECK(j.contains("bound_c1c2"));
    CHECK(j["ok"] == true);
}

TEST_CASE("reports are deterministic")
{
    Workbench w(builtin::by_name("group:z2"));
    RunConfig cfg;
    cfg.cap = 3;
    cfg.threads = 3;
    CHECK(verify_report(w, cfg).doc.dump() == verify_report(w, cfg).doc.dump());
    CHECK(cohomology_report(w, cfg).doc.dump() == cohomology_report(w, cfg).doc.dump());
    Report s = sbi_report(w, cfg);
    CHECK(s.ok);
    CHECK(s.doc.dump() == sbi_report(w, cfg).doc.dump());
}
