// End-to-end checks of the wfdecide binary: exit codes, schema diagnostics,
// export round-trips and flag handling. Takes the binary path as argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "wfd/json_io.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_integration <path-to-wfdecide>\n";
    return 2;
  }
  std::string bin = argv[1];

  // Verdicts are delivered with exit code 0, whatever they are.
  RunResult unsolvable = run(bin + " decide --task builtin:hexagon --n 2");
  check(unsolvable.exit_code == 0, "decide hexagon exits 0");
  check(unsolvable.out.find("\"unsolvable\"") != std::string::npos,
        "decide hexagon reports unsolvable");

  RunResult inconclusive = run(bin + " decide --task builtin:sa:k=3 --n 3");
  check(inconclusive.exit_code == 0, "decide sa exits 0");
  check(inconclusive.out.find("\"inconclusive\"") != std::string::npos,
        "decide sa reports inconclusive");

  // Schema violations exit 2 with a diagnosis on stderr.
  {
    std::ofstream bad("/tmp/wfdecide_bad_task.json");
    bad << "{\"input\": {\"facets\": [[\"a\"]]}}";
  }
  RunResult bad = run(bin + " validate --task /tmp/wfdecide_bad_task.json");
  check(bad.exit_code == 2, "schema violation exits 2");
  RunResult missing = run(bin + " validate --task /tmp/wfdecide_no_such_file.json");
  check(missing.exit_code == 2, "missing file exits 2");

  // Unknown verbs and flags are rejected before any computation.
  check(run(bin + " frobnicate").exit_code == 2, "unknown verb exits 2");
  check(run(bin + " decide --task builtin:hexagon --n 2 --frob").exit_code == 2,
        "unknown flag exits 2");
  check(run(bin + " decide --task builtin:hexagon").exit_code == 2, "missing --n exits 2");

  // Resource limits exit 3, via flag or environment.
  check(run(bin + " solve --task builtin:hexagon --n 2 --rounds 0 --max-nodes 1").exit_code == 3,
        "node budget exits 3");
  check(run("WFDECIDE_MAX_NODES=1 " + bin + " solve --task builtin:hexagon --n 2 --rounds 0")
            .exit_code == 3,
        "node budget env var exits 3");
  check(run(bin + " closure --task builtin:eps:N=8 --fixed-point --max-vertices 2").exit_code ==
            3,
        "vertex budget exits 3");

  // Export emits canonical JSON that reimports to the same task.
  RunResult exported = run(bin + " export --task builtin:eps:N=4 --dot /tmp/wfdecide_e4.dot");
  check(exported.exit_code == 0, "export exits 0");
  try {
    wfd::ColorlessTask t = wfd::task_from_json_text(exported.out);
    check(t == wfd::gen_epsilon_agreement(4), "export round-trips to the same task");
    std::ofstream copy("/tmp/wfdecide_e4.json");
    copy << exported.out;
    copy.close();
    RunResult reexported = run(bin + " export --task /tmp/wfdecide_e4.json");
    check(reexported.out == exported.out, "re-export is byte-identical");
  } catch (const wfd::Error& e) {
    check(false, std::string("export output parses: ") + e.what());
  }
  {
    std::ifstream dot("/tmp/wfdecide_e4.dot");
    std::string text((std::istreambuf_iterator<char>(dot)), std::istreambuf_iterator<char>());
    check(text.find("graph \"input\"") != std::string::npos, "dot export has the input graph");
    check(text.find("graph \"output\"") != std::string::npos, "dot export has the output graph");
    check(text.find("\"0\" -- \"1\"") != std::string::npos, "dot export lists edges");
  }

  // Validation modes.
  RunResult repair = run(bin + " validate --task builtin:hexagon --mode repair");
  check(repair.exit_code == 0, "repair of a valid task exits 0");
  check(repair.out.find("\"task\"") != std::string::npos, "repair emits the repaired task");

  // solve reports verdicts without changing the exit code.
  RunResult exhausted = run(bin + " solve --task builtin:eps:N=4 --n 2 --rounds 1");
  check(exhausted.exit_code == 0, "exhausted solve exits 0");
  check(exhausted.out.find("\"exhausted\"") != std::string::npos, "solve reports exhausted");
  RunResult found = run(bin + " solve --task builtin:eps:N=4 --n 2 --rounds 2");
  check(found.out.find("\"found\"") != std::string::npos, "solve reports found");

  // Witness files drive the honest oracle.
  {
    RunResult decided = run(bin + " decide --task builtin:eps:N=4 --n 2");
    auto j = wfd::parse_json_text(decided.out);
    std::ofstream w("/tmp/wfdecide_e4_witness.json");
    w << wfd::dump_canonical(j["witness"]);
  }
  RunResult honest = run(bin +
                         " flp --task builtin:eps:N=4 --n 2 --oracle honest --steps 5 "
                         "--witness /tmp/wfdecide_e4_witness.json");
  check(honest.exit_code == 0, "honest flp exits 0");
  check(honest.out.find("prover_concedes") != std::string::npos, "honest oracle wins");

  if (failures == 0) {
    std::cout << "cli_integration: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_integration: " << failures << " check(s) failed\n";
  return 1;
}
