#include <doctest.h>

#include <filesystem>

#include "wigner/config.hpp"
#include "wigner/errors.hpp"
#include "wigner/io.hpp"

using namespace wigner;

namespace {

std::string error_key(const std::string& text, const std::vector<std::string>& sets = {}) {
    try {
        parse_config(text, sets);
    } catch (const ConfigError& e) {
        return e.key() + ": " + e.what();
    }
    return "ok";
}

}  // namespace

TEST_CASE("happy path with documented defaults elsewhere") {
    const auto c = parse_config("E_K=0.5\nkernel=sech\nlambda=4\ntau=3");
    CHECK(c.energy == 0.5);
    CHECK(c.kernel.kind == CorrelationKernel::Kind::Sech);
    CHECK(c.kernel.lambda == 4.0);
    CHECK(c.tau == 3.0);
    CHECK(c.sigma0 == doctest::Approx(0.05));
    const SimulationConfig d;
    CHECK(c.dt == d.dt);
    CHECK(c.t_final == d.t_final);
    CHECK(c.grid.n_x == d.grid.n_x);
    REQUIRE(c.barrier.has_value());
    CHECK(c.barrier->a == 1.0);
}

TEST_CASE("constraint and typo errors name the key") {
    CHECK(error_key("lambda=-2") == "lambda: lambda must be positive");
    CHECK(error_key("kernell=sech") == "kernell: unknown key kernell");
    CHECK(error_key("E_K = abc") == "E_K: unparsable value for E_K: 'abc'");
    CHECK(error_key("E_K = 0.5x").rfind("E_K:", 0) == 0);
    CHECK(error_key("n_x = 2048.5").rfind("n_x:", 0) == 0);
    CHECK(error_key("tau = 0").rfind("tau:", 0) == 0);
    CHECK(error_key("kernel = sech").rfind("lambda:", 0) == 0);
    CHECK(error_key("kernel = gauss").rfind("kernel:", 0) == 0);
    CHECK(error_key("potential = square").rfind("potential:", 0) == 0);
    CHECK(error_key("just words").rfind("just words:", 0) == 0);
    CHECK(error_key("", {"nope=1"}) == "nope: unknown key nope");
}

TEST_CASE("comments, blank lines, whitespace and overrides") {
    const auto c = parse_config(
        "# scattering case\n\n  E_K = 1.5   # above the barrier\r\nkernel = exponential\n"
        "lambda = 2\npotential = flat\nsnapshot_times = 1, 2.5 ,60\n",
        {"lambda=3", "t_final=30", "snapshot_times=10,20"});
    CHECK(c.energy == 1.5);
    CHECK(c.sigma0 == doctest::Approx(0.15));
    CHECK(c.kernel.kind == CorrelationKernel::Kind::Exponential);
    CHECK(c.kernel.lambda == 3.0);
    CHECK_FALSE(c.barrier.has_value());
    CHECK(c.t_final == 30.0);
    CHECK(c.snapshot_times == std::vector<double>{10.0, 20.0});
    const auto empty = parse_config("snapshot_times =");
    CHECK(empty.snapshot_times.empty());
}

TEST_CASE("quadratic kernel keys") {
    const auto a = parse_config("kernel = quadratic\nlambda2 = 0.03125\ncutoff = inf");
    CHECK(a.kernel.lambda2 == 0.03125);
    CHECK(std::isinf(a.kernel.cutoff));
    const auto b = parse_config("kernel = quadratic\nlambda = 4");
    CHECK(b.kernel.lambda2 == 1.0 / 32.0);
    CHECK(b.kernel.cutoff == doctest::Approx(std::sqrt(32.0)));
    CHECK(error_key("kernel = quadratic").rfind("lambda2:", 0) == 0);
}

TEST_CASE("format_config round-trips") {
    const auto original = parse_config(
        "E_K=1.1\nsigma0=0.07\nkernel=quadratic\nlambda1=0.01\nlambda2=0.02\ncutoff=5\n"
        "barrier_width=2.5\nx0=-33.3\ndt=0.02\nt_final=4\nsnapshot_times=1,2\nsample_every=3\n"
        "boundary_threshold=1e-7\nn_x=512\nn_p=128\nhbar=0.7");
    const auto again = parse_config(format_config(original));
    CHECK(format_config(again) == format_config(original));
    CHECK(again.sigma0 == original.sigma0);
    CHECK(again.kernel.lambda1 == 0.01);
    CHECK(again.kernel.cutoff == 5.0);
    CHECK(again.barrier->a == 2.5);
    CHECK(again.hbar == 0.7);

    const auto flat = parse_config("potential = flat\nkernel = sech\nlambda = 10");
    CHECK_FALSE(parse_config(format_config(flat)).barrier.has_value());
}

TEST_CASE("every documented key is accepted") {
    for (const auto& k : config_keys()) {
        CAPTURE(k.key);
        CHECK_FALSE(k.help.empty());
        CHECK(error_key(k.key + " = ?").find("unknown key") == std::string::npos);
    }
}

TEST_CASE("load_config reads files and reports missing ones") {
    const auto dir = std::filesystem::temp_directory_path() / "wigner_config_test";
    std::filesystem::create_directories(dir);
    write_text(dir / "case.cfg", "E_K = 1.0\nkernel = sech\nlambda = 10\n");
    const auto c = load_config(dir / "case.cfg", {"tau=2"});
    CHECK(c.energy == 1.0);
    CHECK(c.tau == 2.0);
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), IoError);
    std::filesystem::remove_all(dir);
}
