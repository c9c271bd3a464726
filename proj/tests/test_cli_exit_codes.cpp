// Exit codes of the gn1d executable; its path is the first argument.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

int run(const std::string& command)
{
    const int status = std::system((command + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect(const std::string& what, int got, int want)
{
    std::printf("%s  %-48s exit %d (want %d)\n", got == want ? "PASS" : "FAIL", what.c_str(), got, want);
    if (got != want)
        ++failures;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <gn1d>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const bool with_verify = argc > 2 && std::string(argv[2]) == "--with-verify";
    const fs::path dir = fs::temp_directory_path() / "gn1d_exit_codes";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto cfg = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text << "output_dir = " << (dir / ("out_" + name)).string() << '\n';
        return (dir / name).string();
    };

    expect("scenarios", run(cli + " scenarios"), 0);
    expect("dump-config --scenario hump", run(cli + " dump-config --scenario hump"), 0);
    expect("run ok", run(cli + " run --config " + cfg("ok.cfg", "scenario = hump\nn = 64\nlength = 32\nt_end = 0.5\n")), 0);
    expect("run with depth floor above the data",
           run(cli + " run --config " + cfg("floor.cfg", "scenario = hump\nn = 64\nlength = 32\nh0 = 2\n")), 1);
    expect("run with epsilon out of range", run(cli + " run --config " + cfg("eps.cfg", "scenario = hump\nepsilon = 1.5\n")), 2);
    expect("run with unknown key", run(cli + " run --config " + cfg("key.cfg", "scenario = hump\nfoo = 1\n")), 2);
    expect("run without --config", run(cli + " run"), 2);
    expect("run with missing file", run(cli + " run --config " + (dir / "absent.cfg").string()), 2);
    expect("unknown subcommand", run(cli + " fly"), 2);
    if (with_verify) {
        expect("verify", run(cli + " verify --seed 7"), 0);
        expect("verify --break-depth", run(cli + " verify --break-depth"), 3);
    }
    return failures == 0 ? 0 : 1;
}
