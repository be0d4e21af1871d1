#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int exit_code(const std::string& args) {
    const std::string cmd = std::string(WIGNERSIM_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kSmall =
    "--set x_min=-40 --set x_max=40 --set n_x=256 --set p_min=-4 --set p_max=4 --set n_p=128 "
    "--set sigma0=0.25 --set x0=-10 --set t_final=0.5 --set snapshot_times=0.5 ";

}  // namespace

TEST_CASE("cli exit codes") {
    const auto out = fs::temp_directory_path() / "wigner_cli_test";
    fs::remove_all(out);
    CHECK(exit_code("--help") == 0);
    CHECK(exit_code("") == 1);
    CHECK(exit_code("run --set kernell=sech") == 1);
    CHECK(exit_code("run --set lambda=-2") == 1);
    CHECK(exit_code("run --config /nonexistent.cfg") == 1);
    CHECK(exit_code("run " + kSmall + "--set kernel=sech --set lambda=4 -o " + out.string()) == 0);
    CHECK(fs::exists(out / "moments.csv"));
    CHECK(fs::exists(out / "snapshot_t0.5.wig"));
    // Packet parked on the edge of the momentum window: a runtime failure.
    CHECK(exit_code("run " + kSmall + "--set E_K=7 -o " + out.string()) == 2);
    CHECK(exit_code("sweep " + kSmall + "--energies 0.5 --kernels sech:0 -o " + out.string()) == 1);
    fs::remove_all(out);
}
