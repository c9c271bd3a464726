#include "gn1d/cli_app.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gn1d;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("gn1d_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream(path) << text;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int config_error_line(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_SUITE("cli_app") {

TEST_CASE("empty file with a scenario flag gives the defaults")
{
    RunConfig expected;
    expected.scenario = "hump";
    CHECK(parse_config("", std::string("hump")) == expected);
    CHECK(parse_config("# only a comment\n\n", std::string("hump")) == expected);
}

TEST_CASE("out-of-range values name their bound")
{
    try {
        parse_config("scenario = hump\nepsilon = 1.5\n");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("(0,1]") != std::string::npos);
    }
}

TEST_CASE("malformed configs")
{
    CHECK(config_error_line("scenario = hump\nbogus = 1\n") == 2);
    CHECK(config_error_line("scenario = hump\nn = 64\nn = 128\n") == 3);
    CHECK(config_error_line("scenario = hump\njust words\n") == 2);
    CHECK(config_error_line("scenario = hump\nmu = abc\n") == 2);
    CHECK(config_error_line("scenario = hump\nn = 33\n") == 2);
    CHECK(config_error_line("scenario = hump\nmode = sideways\n") == 2);
    CHECK(config_error_line("scenario = nowhere\n") == 1);
    CHECK(config_error_line("n = 64\n") == 0);
}

TEST_CASE("config dump round-trips exactly")
{
    const std::string text = "scenario = solitary_over_bar  # trailing comment\n"
                             "n = 1024\nlength = 128\nepsilon = 0.1\nmu = 0.30000000000000004\n"
                             "h0 = 0.123456789012345678\ncfl = 0.45\ndt_max = 0.05\nt_end = 12.5\n"
                             "snapshot_every = 0\noutput_dir = results/a\nmode = picard\nseed = 18446744073709551615\n"
                             "amplitude = 0.15\ncenter = 20\nwidth = 1.7\nbar_height = 0.33\nbar_width = 4\n"
                             "bar_center = 70.25\ns = 1.5\ndealias = true\nnorm_threshold_factor = 250\n"
                             "picard_max_iters = 7\npicard_tol = 3e-11\nmollifier_delta = 0.2\n";
    const RunConfig c = parse_config(text);
    CHECK(c.h0.has_value());
    CHECK(c.mu == 0.30000000000000004);
    CHECK(c.mode == RunMode::picard);
    const std::string dumped = dump_config(c);
    CHECK(parse_config(dumped) == c);
    CHECK(dump_config(parse_config(dumped)) == dumped);

    RunConfig d;
    d.scenario = "hump";
    CHECK(parse_config(dump_config(d)) == d);
    CHECK(dump_config(d).find("h0 = auto") != std::string::npos);
}

TEST_CASE("bathymetry files")
{
    const fs::path dir = scratch("bathy");
    const Grid grid(256, 64.0);

    std::string flat;
    for (int i = 0; i < 32; ++i)
        flat += std::to_string(2.0 * i) + " 0\n";
    write_file(dir / "flat.dat", flat);
    const Bathymetry b0 = load_bathymetry((dir / "flat.dat").string(), grid);
    CHECK(test::max_abs(b0.b) == 0.0);
    CHECK(b0.is_flat());

    std::ostringstream cosine;
    cosine.precision(17);
    for (int i = 0; i < 64; ++i) {
        const double x = i * 1.0;
        cosine << x << ' ' << std::cos(2 * M_PI * x / 64.0) << '\n';
    }
    write_file(dir / "cos.dat", "# x b\n" + cosine.str());
    const Bathymetry b1 = load_bathymetry((dir / "cos.dat").string(), grid);
    const double k = 2 * M_PI / 64.0;
    CHECK(test::max_abs(b1.b - test::sample(grid, [&](double x) { return std::cos(k * x); })) <= 1e-12);
    CHECK(test::max_abs(b1.b_x + test::sample(grid, [&](double x) { return k * std::sin(k * x); })) <= 1e-12);

    // shifted, non-uniform abscissae of a band-limited profile
    std::ostringstream shifted;
    shifted.precision(17);
    for (int i = 0; i < 24; ++i) {
        const double x = 3.0 + 2.5 * i + 0.4 * std::sin(i);
        shifted << x << ' ' << 0.1 * std::sin(3 * k * x) - 0.2 * std::cos(k * x) << '\n';
    }
    write_file(dir / "shifted.dat", shifted.str());
    const Bathymetry b2 = load_bathymetry((dir / "shifted.dat").string(), grid);
    CHECK(test::max_abs(b2.b - test::sample(grid, [&](double x) {
              return 0.1 * std::sin(3 * k * x) - 0.2 * std::cos(k * x);
          })) <= 1e-10);

    write_file(dir / "bad.dat", "0 0\n1 0\n2 0\n3 0\n2.5 0\n5 0\n6 0\n7 0\n8 0\n");
    try {
        load_bathymetry((dir / "bad.dat").string(), grid);
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("row 5") != std::string::npos);
    }
    write_file(dir / "short.dat", "0 0\n1 0\n");
    CHECK_THROWS_AS(load_bathymetry((dir / "short.dat").string(), grid), ConfigError);
}

TEST_CASE("time series files")
{
    const fs::path dir = scratch("series");
    emit_timeseries({}, (dir / "empty.dat").string());
    CHECK(read_file(dir / "empty.dat") == "# t energy mass min_h xs_norm es_norm\n");

    const DiagnosticRecord r{0.1, 1.0 / 3.0, -2.0e-17, 0.7071067811865476, 123456.789, std::nextafter(1.0, 2.0)};
    emit_timeseries({r}, (dir / "one.dat").string());
    const std::string text = read_file(dir / "one.dat");
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    const auto back = read_timeseries((dir / "one.dat").string());
    REQUIRE(back.size() == 1);
    CHECK(back[0].t == r.t);
    CHECK(back[0].energy == r.energy);
    CHECK(back[0].mass == r.mass);
    CHECK(back[0].min_h == r.min_h);
    CHECK(back[0].xs_norm == r.xs_norm);
    CHECK(back[0].es_norm == r.es_norm);

    CHECK_THROWS_AS(emit_timeseries({r}, (dir / "missing" / "x.dat").string()), OutputError);
}

TEST_CASE("snapshot of the rest state")
{
    const fs::path dir = scratch("snap");
    const Grid grid(32, 8.0);
    emit_snapshot(State::rest(grid), Bathymetry::flat(grid), Parameters{}, grid, (dir / "s.dat").string());
    std::ifstream in(dir / "s.dat");
    std::string header;
    std::getline(in, header);
    CHECK(header == "# x zeta u b h");
    int rows = 0;
    double x, z, u, b, h;
    while (in >> x >> z >> u >> b >> h) {
        CHECK(h == 1.0);
        ++rows;
    }
    CHECK(rows == 32);
    CHECK(snapshot_name(42) == "snap_000042.dat");
}

TEST_CASE("runs write their outputs and are deterministic")
{
    const fs::path dir = scratch("run");
    RunConfig c = parse_config("scenario = hump_over_bar\nn = 128\nt_end = 1\nsnapshot_every = 5\n");
    std::ostringstream log;
    for (const char* name : {"a", "b"}) {
        c.output_dir = (dir / name).string();
        CHECK(run_config(c, log) == exit_ok);
    }
    CHECK(fs::exists(dir / "a" / "timeseries.dat"));
    CHECK(fs::exists(dir / "a" / "snap_000000.dat"));
    for (const auto& entry : fs::directory_iterator(dir / "a"))
        CHECK(read_file(entry.path()) == read_file(dir / "b" / entry.path().filename()));

    c.mode = RunMode::linearized;
    c.output_dir = (dir / "lin").string();
    CHECK(run_config(c, log) == exit_ok);
    CHECK(fs::exists(dir / "lin" / "timeseries.dat"));

    c.mode = RunMode::picard;
    c.t_end = 0.1;
    c.output_dir = (dir / "pic").string();
    CHECK(run_config(c, log) == exit_ok);
    CHECK(fs::exists(dir / "pic" / "picard.dat"));
}

TEST_CASE("a floor above the initial depth stops the run")
{
    const fs::path dir = scratch("floor");
    RunConfig c = parse_config("scenario = hump\nn = 128\nt_end = 1\nh0 = 1.5\n");
    c.output_dir = dir.string();
    std::ostringstream log;
    CHECK(run_config(c, log) == exit_blowup);
}

TEST_CASE("a scenario that does not fit the domain is a config error")
{
    RunConfig c = parse_config("scenario = solitary\nlength = 16\n");
    c.output_dir = scratch("short").string();
    std::ostringstream log;
    CHECK_THROWS_AS(run_config(c, log), ConfigError);
}

}
