// Drives the installed CLI binary end to end: subcommands, exit codes,
// file outputs, and byte-level determinism of repeated runs.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok: %s\n", what.c_str());
    } else {
        std::printf("FAIL: %s\n", what.c_str());
        ++g_failures;
    }
}

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-specialk-binary>\n";
        return 2;
    }
    g_cli = argv[1];

    const fs::path dir = fs::temp_directory_path() / "specialk_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string out = dir.string();

    // generate: file count and regeneration determinism
    expect(run("generate --shape moons --m 80 --noise 0 --noise 0.1 "
               "--replicates 2 --seed 3 --out " + out + "/gen") == 0,
           "generate exits 0");
    int csvs = 0;
    for (const auto& entry : fs::directory_iterator(dir / "gen"))
        csvs += entry.path().extension() == ".csv";
    expect(csvs == 4, "generate wrote noise x replicates files");
    const std::string before = slurp(dir / "gen" / "moons_0.1_0.csv");
    expect(run("generate --shape moons --m 80 --noise 0 --noise 0.1 "
               "--replicates 2 --seed 3 --out " + out + "/gen2") == 0,
           "second generate exits 0");
    expect(slurp(dir / "gen2" / "moons_0.1_0.csv") == before,
           "regenerated files are byte-identical");

    // the default grid is the ten-level protocol: 10 x 5 files
    expect(run("generate --shape blobs --m 30 --replicates 5 --seed 2 --out " +
               out + "/fullgrid") == 0,
           "full-grid generate exits 0");
    int grid_files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "fullgrid"))
        grid_files += entry.path().extension() == ".csv";
    expect(grid_files == 50, "default grid yields 50 dataset files");

    // estimate on a labeled dataset
    expect(run("generate --shape blobs --m 240 --noise 0.05 --replicates 1 "
               "--seed 3 --out " + out + "/data") == 0,
           "blob generate exits 0");
    const std::string dataset = out + "/data/blobs_0.05_0.csv";
    expect(run("estimate " + dataset + " --labels --preset wr --n 80 "
               "--alpha 0.01 --k-max 5 --seed 1 --out " + out + "/est") == 0,
           "estimate exits 0");
    expect(fs::exists(dir / "est" / "blobs_0.05_0_wr.json"),
           "estimate wrote a JSON report");
    expect(fs::exists(dir / "est" / "blobs_0.05_0_wr_labels.csv"),
           "estimate wrote the label CSV");
    const std::string report = slurp(dir / "est" / "blobs_0.05_0_wr.json");
    expect(report.find("\"schema\": \"specialk/1\"") != std::string::npos,
           "report carries the schema tag");
    expect(report.find("\"nmi\"") != std::string::npos,
           "report carries per-k NMI for labeled data");

    // estimate determinism end to end
    expect(run("estimate " + dataset + " --labels --preset wr --n 80 "
               "--alpha 0.01 --k-max 5 --seed 1 --out " + out + "/est2") == 0,
           "repeat estimate exits 0");
    expect(slurp(dir / "est2" / "blobs_0.05_0_wr.json") == report,
           "estimate JSON is byte-identical across runs");

    // the -L switch and the wc preset execute
    expect(run("estimate " + dataset + " --preset wc --n 40 --seed 1 "
               "--laplacian --out " + out + "/est3") == 0,
           "wc preset with --laplacian exits 0");

    // error contracts
    expect(run("estimate " + out + "/missing.csv --out " + out) == 2,
           "missing dataset file exits 2");
    expect(run("bogus-subcommand") == 2, "unknown subcommand exits 2");
    {
        std::ofstream bad(dir / "ragged.csv");
        bad << "1,2\n3\n";
    }
    expect(run("estimate " + out + "/ragged.csv --n 1") == 2,
           "ragged csv exits 2");
    expect(run("estimate " + dataset + " --preset wr --n 9999") == 2,
           "n larger than m exits 2");

    // sweep-noise: csv + svg, row counts
    expect(run("sweep-noise --shape random --m 70 --noise 0 --noise 0.05 "
               "--replicates 2 --n 24 --k-max 3 --seed 5 --out " + out + "/sweep") == 0,
           "sweep-noise exits 0");
    const std::string sweep_csv = slurp(dir / "sweep" / "random_noise_sweep.csv");
    expect(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 1 + 2 * 2 * 2,
           "sweep csv has header plus presets x noise x replicates rows");
    expect(fs::exists(dir / "sweep" / "random_noise_sweep.svg"),
           "sweep-noise wrote an SVG");

    // sweep-n
    expect(run("sweep-n --shape random --m 70 --n-grid 10 --n-grid 20 "
               "--noise 0.1 --replicates 1 --k-max 3 --seed 5 --out " +
               out + "/sweepn") == 0,
           "sweep-n exits 0");
    const std::string n_csv = slurp(dir / "sweepn" / "random_n_sweep.csv");
    expect(n_csv.rfind("shape,preset,n,replicate,k_selected,status\n", 0) == 0,
           "sweep-n csv carries the n column");
    expect(std::count(n_csv.begin(), n_csv.end(), '\n') == 1 + 2 * 2,
           "sweep-n csv row count");

    // a bounded worker pool must not change the numbers
    {
        const std::string cmd = "SPECIALK_THREADS=2 " + g_cli +
                                " sweep-noise --shape random --m 70 --noise 0 "
                                "--noise 0.05 --replicates 2 --n 24 --k-max 3 "
                                "--seed 5 --out " + out + "/sweep_t2 >/dev/null 2>&1";
        expect(WEXITSTATUS(std::system(cmd.c_str())) == 0,
               "sweep-noise under SPECIALK_THREADS exits 0");
        expect(slurp(dir / "sweep_t2" / "random_noise_sweep.csv") == sweep_csv,
               "thread cap leaves sweep results byte-identical");
    }

    // report over the estimate outputs
    expect(run("report " + out + "/est --csv " + out + "/table.csv") == 0,
           "report exits 0");
    expect(fs::exists(dir / "table.csv"), "report wrote the CSV twin");
    expect(run("report " + out + "/empty-dir") == 2,
           "report on a missing directory exits 2");

    fs::remove_all(dir);
    if (g_failures == 0) {
        std::printf("cli_tests: all passed\n");
        return 0;
    }
    std::printf("cli_tests: %d failures\n", g_failures);
    return 1;
}
