// frsum: exact computation of restricted / unrestricted weighted sums,
// quadratic polynomial tables and their deformed rational counterparts, and
// batch verification of the factorized forms and power-series identities.
// All output is deterministic JSON (sorted keys, canonical polynomial text).

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "frs/deformed.hpp"
#include "frs/fermionic.hpp"
#include "frs/genfun.hpp"
#include "frs/oracle.hpp"
#include "frs/qsystem.hpp"

using json = nlohmann::json;  // object keys are kept sorted
using namespace frs;

namespace {

constexpr const char* kVersion = "1.0.0";

json int_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<long>(v.get_si());
    return v.get_str();
}

std::vector<long> parse_csv_longs(const std::string& s) {
    std::vector<long> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stol(item));
    return out;
}

// n rows are given once per node as "a:v1,v2,..."; absent rows are zero.
std::vector<std::vector<long>> parse_n_rows(const AlgebraSpec& g, int k,
                                            const std::vector<std::string>& rows) {
    std::vector<std::vector<long>> n(static_cast<std::size_t>(g.rank));
    for (int a = 1; a <= g.rank; ++a)
        n[a - 1].assign(static_cast<std::size_t>(g.t_of(a) * k), 0);
    for (const std::string& row : rows) {
        auto colon = row.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--n expects \"node:v1,v2,...\", got \"" + row + "\"");
        int a = std::stoi(row.substr(0, colon));
        if (a < 1 || a > g.rank)
            throw std::invalid_argument("--n: node " + std::to_string(a) + " out of range");
        std::vector<long> vals = parse_csv_longs(row.substr(colon + 1));
        if (vals.size() != n[a - 1].size())
            throw std::invalid_argument("--n: row for node " + std::to_string(a) + " must have " +
                                        std::to_string(n[a - 1].size()) + " entries");
        n[a - 1] = std::move(vals);
    }
    return n;
}

SumInstance make_instance(const std::string& algebra, int k, const std::string& lambda_csv,
                          const std::vector<std::string>& n_rows) {
    AlgebraSpec g = build_algebra(algebra);
    std::vector<long> lambda(static_cast<std::size_t>(g.rank), 0);
    if (!lambda_csv.empty()) {
        lambda = parse_csv_longs(lambda_csv);
        if (lambda.size() != static_cast<std::size_t>(g.rank))
            throw std::invalid_argument("--lambda must have one entry per node");
    }
    SumInstance inst{std::move(g), k, std::move(lambda), parse_n_rows(build_algebra(algebra), k, n_rows)};
    inst.validate();
    return inst;
}

json instance_json(const SumInstance& inst) {
    json jn = json::object();
    for (int a = 1; a <= inst.g.rank; ++a) jn[std::to_string(a)] = inst.n[a - 1];
    return json{{"algebra", inst.g.name()},
                {"k", inst.k},
                {"lambda", inst.lambda},
                {"n", jn}};
}

int emit(const json& report, const std::string& out_path, int code) {
    // canonical form: sorted keys, two-space indentation, trailing newline
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << text;
    }
    return code;
}

// ---------------------------------------------------------------------------
// Grid enumeration shared by verify-mn and sweep
// ---------------------------------------------------------------------------

void enumerate_vectors(std::size_t len, long budget, std::vector<long>& cur,
                       const std::function<void(const std::vector<long>&)>& cb) {
    if (cur.size() == len) {
        cb(cur);
        return;
    }
    for (long v = 0; v <= budget; ++v) {
        cur.push_back(v);
        enumerate_vectors(len, budget - v, cur, cb);
        cur.pop_back();
    }
}

std::vector<SumInstance> mn_grid(const AlgebraSpec& g, int k, long max_n, long max_lambda) {
    std::vector<SumInstance> out;
    std::size_t slots = 0;
    for (int a = 1; a <= g.rank; ++a) slots += static_cast<std::size_t>(g.t_of(a) * k);
    std::vector<long> lam, flat;
    enumerate_vectors(static_cast<std::size_t>(g.rank), max_lambda, lam,
                      [&](const std::vector<long>& lambda) {
        enumerate_vectors(slots, max_n, flat, [&](const std::vector<long>& nf) {
            SumInstance inst{g, k, lambda, {}};
            inst.n.resize(static_cast<std::size_t>(g.rank));
            std::size_t pos = 0;
            for (int a = 1; a <= g.rank; ++a) {
                std::size_t len = static_cast<std::size_t>(g.t_of(a) * k);
                inst.n[a - 1].assign(nf.begin() + pos, nf.begin() + pos + len);
                pos += len;
            }
            out.push_back(std::move(inst));
        });
    });
    return out;
}

struct MnResult {
    long checked = 0;
    long failures = 0;
    std::string first_failure;
};

MnResult run_mn_grid(const std::vector<SumInstance>& grid, int jobs) {
    std::vector<char> fail(grid.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            if (m_sum(grid[i]) != n_sum(grid[i])) fail[i] = 1;
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    MnResult res;
    res.checked = static_cast<long>(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (fail[i]) {
            ++res.failures;
            if (res.first_failure.empty()) res.first_failure = instance_json(grid[i]).dump();
        }
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact weighted-sum and quadratic-table toolkit"};
    app.require_subcommand(1);

    std::string algebra, lambda_csv, statement, grid_name = "sl2", out_path;
    std::vector<std::string> n_rows;
    int k = 1, levels = 2, window = 4, jobs = 1, split_j = 0, split_p = 0, bound = 4;
    long max_n = 2, max_lambda = 2, max_weight = 8;
    bool verify_recursion = false;

    auto add_instance_flags = [&](CLI::App* cmd, bool need_algebra = true) {
        auto* opt = cmd->add_option("--algebra", algebra, "algebra name, e.g. B3");
        if (need_algebra) opt->required();
        cmd->add_option("--k", k, "number of top levels");
        cmd->add_option("--lambda", lambda_csv, "comma-separated weight labels");
        cmd->add_option("--n", n_rows, "row per node as \"a:v1,v2,...\"");
        cmd->add_option("--out", out_path, "also write the JSON report here");
    };

    auto* c_msum = app.add_subcommand("msum", "restricted weighted sum");
    add_instance_flags(c_msum);
    auto* c_nsum = app.add_subcommand("nsum", "unrestricted (signed) weighted sum");
    add_instance_flags(c_nsum);

    auto* c_mn = app.add_subcommand("verify-mn", "restricted == unrestricted on a grid");
    add_instance_flags(c_mn);
    c_mn->add_option("--max-n", max_n, "bound on the total of n");
    c_mn->add_option("--max-lambda", max_lambda, "bound on the total of lambda");
    c_mn->add_option("--jobs", jobs, "worker threads");

    auto* c_q = app.add_subcommand("qsystem", "polynomial table of the quadratic recursion");
    c_q->add_option("--algebra", algebra)->required();
    c_q->add_option("--levels", levels, "scaled depth");
    c_q->add_option("--out", out_path);

    auto* c_d = app.add_subcommand("deformed", "rational table of the deformed recursion");
    c_d->add_option("--algebra", algebra)->required();
    c_d->add_option("--levels", levels, "scaled depth");
    c_d->add_flag("--verify-recursion", verify_recursion,
                  "also check the shift self-similarity and the rebuild");
    c_d->add_option("--out", out_path);

    auto* c_v = app.add_subcommand("verify", "verify one factorized form on a window");
    add_instance_flags(c_v);
    c_v->add_option("--statement", statement, "statement token")->required();
    c_v->add_option("--window", window, "seed box [-w, w] per node");
    c_v->add_option("--split-j", split_j, "level split point (split statements)");
    c_v->add_option("--split-p", split_p, "partial short-node depth (split statements)");

    auto* c_ps = app.add_subcommand("ps-check",
                                    "restricted == unrestricted as evaluated power series");
    add_instance_flags(c_ps);
    c_ps->add_option("--bound", bound, "seed exponent bound");

    auto* c_o = app.add_subcommand("oracle-check", "independent multiplicity oracles");
    c_o->add_option("--grid", grid_name, "sl2, A2 or A3");
    c_o->add_option("--max-weight", max_weight, "grid bound");
    c_o->add_option("--out", out_path);

    auto* c_s = app.add_subcommand("sweep", "verify-mn over several algebras");
    c_s->add_option("--algebra", algebra, "comma-separated list (default: a standard set)");
    c_s->add_option("--k", k);
    c_s->add_option("--max-n", max_n);
    c_s->add_option("--max-lambda", max_lambda);
    c_s->add_option("--jobs", jobs, "worker threads");
    c_s->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        json report{{"version", kVersion}};

        if (app.got_subcommand(c_msum) || app.got_subcommand(c_nsum)) {
            SumInstance inst = make_instance(algebra, k, lambda_csv, n_rows);
            report["algebra"] = inst.g.name();
            report["instance"] = instance_json(inst);
            if (app.got_subcommand(c_msum))
                report["M"] = int_json(m_sum(inst));
            else
                report["N"] = int_json(n_sum(inst));
            return emit(report, out_path, 0);
        }

        if (app.got_subcommand(c_mn)) {
            AlgebraSpec g = build_algebra(algebra);
            MnResult res = run_mn_grid(mn_grid(g, k, max_n, max_lambda), jobs);
            report["algebra"] = g.name();
            report["checked"] = res.checked;
            report["failures"] = res.failures;
            if (!res.first_failure.empty()) report["first_failure"] = res.first_failure;
            return emit(report, out_path, res.failures == 0 ? 0 : 1);
        }

        if (app.got_subcommand(c_q)) {
            AlgebraSpec g = build_algebra(algebra);
            QSystemTable table = solve_q_system(g, levels);
            json entries = json::object();
            for (int a = 1; a <= g.rank; ++a)
                for (int j = 0; j <= g.t_of(a) * levels; ++j) {
                    std::ostringstream key;
                    key << "Q(" << a << "," << j << ")";
                    entries[key.str()] = table.entry(a, j).str();
                }
            report["algebra"] = g.name();
            report["entries"] = entries;
            return emit(report, out_path, 0);
        }

        if (app.got_subcommand(c_d)) {
            AlgebraSpec g = build_algebra(algebra);
            DeformedQTable table(g);
            json entries = json::object();
            for (int a = 1; a <= g.rank; ++a)
                for (int i = 0; i <= g.t_of(a) * levels; ++i) {
                    std::ostringstream key;
                    key << "D(" << a << "," << i << ")";
                    const RationalFunction& e = table.entry(a, i);
                    entries[key.str()] = json{{"den", e.den().str()}, {"num", e.num().str()}};
                }
            report["algebra"] = g.name();
            report["entries"] = entries;
            bool ok = true;
            if (verify_recursion) {
                std::string why;
                ok = verify_shift_recursion(table, 1, levels, &why) &&
                     verify_shift_rebuild(g, levels, &why);
                report["recursion_check"] = ok ? "pass" : "fail";
                if (!ok) report["first_failure"] = why;
            }
            return emit(report, out_path, ok ? 0 : 1);
        }

        if (app.got_subcommand(c_v)) {
            SumInstance inst = make_instance(algebra, k, lambda_csv, n_rows);
            auto st = statement_from_token(statement);
            if (!st) throw std::invalid_argument("unknown statement token: " + statement);
            if (statement_is_split(*st)) {
                if (split_j == 0 && *st != FactorizationStatement::ShortPartialSplit) split_j = 1;
                if (split_p == 0 && (*st == FactorizationStatement::ShortPartialSplit ||
                                     *st == FactorizationStatement::GeneralTailExplicit))
                    split_p = 1;
            }
            DeformedQTable table(inst.g);
            SeedBox box = SeedBox::cube(inst.g.rank, -window, window);
            VerifyReport rep = verify_factorization(table, inst, box, *st, split_j, split_p);
            report["algebra"] = inst.g.name();
            report["instance"] = instance_json(inst);
            report["statement"] = statement;
            report["status"] = rep.ok ? "pass" : "fail";
            report["checked_coefficients"] = rep.compared;
            report["nonzero_coefficients"] = rep.nonzero;
            if (!rep.ok) report["first_failure"] = rep.detail;
            return emit(report, out_path, rep.ok ? 0 : 1);
        }

        if (app.got_subcommand(c_ps)) {
            SumInstance inst = make_instance(algebra, k, lambda_csv, n_rows);
            PhiSpec full;
            full.full = true;
            std::vector<int> ones(static_cast<std::size_t>(inst.g.rank), 1);
            std::vector<bool> ps(static_cast<std::size_t>(inst.g.rank), true);
            VerifyReport rep = verify_ps_identity(inst, &ones, nullptr, full, ps, bound);
            report["algebra"] = inst.g.name();
            report["instance"] = instance_json(inst);
            report["status"] = rep.ok ? "pass" : "fail";
            report["checked_coefficients"] = rep.compared;
            if (!rep.ok) report["first_failure"] = rep.detail;
            return emit(report, out_path, rep.ok ? 0 : 1);
        }

        if (app.got_subcommand(c_o)) {
            long checked = 0, failures = 0;
            std::string first;
            if (grid_name == "sl2") {
                std::vector<long> n;
                std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
                    if (i == n.size()) {
                        for (long l = 0; l <= max_weight; ++l) {
                            Int cg = clebsch_gordan_multiplicity(l, n);
                            long w = 0;
                            for (std::size_t s = 0; s < n.size(); ++s)
                                w += (static_cast<long>(s) + 1) * n[s];
                            std::vector<long> row(n);
                            row.resize(static_cast<std::size_t>(max_weight), 0);
                            SumInstance inst{build_algebra("A1"), static_cast<int>(max_weight),
                                             {l}, {row}};
                            ++checked;
                            bool ok = catalan_residue_multiplicity(l, n, static_cast<int>(w)) == cg &&
                                      n_sum(inst) == cg && m_sum(inst) == cg;
                            if (!ok) {
                                ++failures;
                                if (first.empty())
                                    first = "l=" + std::to_string(l) + " " + instance_json(inst).dump();
                            }
                        }
                        return;
                    }
                    long unit = static_cast<long>(i) + 1;
                    for (long v = 0; unit * v <= left; ++v) {
                        n[i] = v;
                        rec(i + 1, left - unit * v);
                    }
                    n[i] = 0;
                };
                n.assign(static_cast<std::size_t>(max_weight), 0);
                rec(0, max_weight);
            } else {
                AlgebraSpec g = build_algebra(grid_name);
                std::vector<SumInstance> instances = mn_grid(g, 1, 2, 0);
                for (const SumInstance& inst : instances) {
                    ++checked;
                    std::string why;
                    if (!verify_hkoty_character_identity(g, 1, inst.n, &why)) {
                        ++failures;
                        if (first.empty()) first = why;
                    }
                }
            }
            report["grid"] = grid_name;
            report["checked"] = checked;
            report["failures"] = failures;
            if (!first.empty()) report["first_failure"] = first;
            return emit(report, out_path, failures == 0 ? 0 : 1);
        }

        if (app.got_subcommand(c_s)) {
            std::vector<std::string> names;
            std::string list = algebra.empty() ? "A1,A2,B2,C2,G2" : algebra;
            std::istringstream is(list);
            std::string item;
            while (std::getline(is, item, ',')) names.push_back(item);
            json per = json::object();
            long failures = 0;
            for (const std::string& name : names) {
                AlgebraSpec g = build_algebra(name);
                MnResult res = run_mn_grid(mn_grid(g, k, max_n, max_lambda), jobs);
                json one{{"checked", res.checked}, {"failures", res.failures}};
                if (!res.first_failure.empty()) one["first_failure"] = res.first_failure;
                per[g.name()] = one;
                failures += res.failures;
            }
            report["algebras"] = per;
            report["failures"] = failures;
            return emit(report, out_path, failures == 0 ? 0 : 1);
        }
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
