#include <bhlab/cohoring.hpp>
#include <bhlab/corpus.hpp>
#include <bhlab/dwork.hpp>
#include <bhlab/io.hpp>
#include <bhlab/report.hpp>
#include <bhlab/verify.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace bhlab;

namespace {

enum Exit { kPass = 0, kFail = 1, kDomain = 2, kParse = 3 };

struct Config {
    std::string matrix;
    std::int64_t prime = 0;
    std::int64_t precision = 0;
    std::int64_t window = 6;
    std::string suite;
    std::string format = "pretty";
    std::uint64_t seed = 1;
    std::size_t cases = 20;
    bool check_duality = false;
};

BHMatrix load(const Config &cfg)
{
    if (cfg.matrix.empty()) throw ParseError("missing --matrix");
    return BHMatrix::validate(parse_matrix(cfg.matrix));
}

std::string join(const std::vector<std::string> &v, const std::string &sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

int cmd_classify(const Config &cfg, Format fmt)
{
    auto m = load(cfg);
    const auto &d = decompose(m);
    auto q = weights(m);
    std::vector<std::string> atoms;
    Json ja = Json::array();
    for (const auto &a : d.atoms) {
        atoms.push_back(a.str());
        IntVec vars;
        for (auto v : a.vars) vars.push_back(static_cast<std::int64_t>(v) + 1);
        ja.push_back({{"kind", a.kind == AtomKind::Chain ? "chain" : "loop"}, {"exponents", a.exponents}, {"vars", vars}});
    }
    std::string det = Integer(abs(m.det())).get_str();
    if (fmt == Format::Pretty) {
        std::cout << join(atoms, " + ") << ", det=" << det << ", q=" << vec_str(q) << "\n";
        return kPass;
    }
    Table t{{"atoms", "det", "q"}, {}};
    t.add({Cell(join(atoms, " + "), ja), Cell(Rational(abs(m.det()))), vec_cell(q)});
    if (fmt == Format::Json) std::cout << table_json(t)[0].dump(2) << "\n";
    else std::cout << render(t, fmt);
    return kPass;
}

int cmd_group(const Config &cfg, Format fmt)
{
    std::cout << render(group_table(load(cfg)), fmt);
    return kPass;
}

int cmd_basis(const Config &cfg, Format fmt)
{
    std::cout << render(basis_table(load(cfg)), fmt);
    return kPass;
}

int cmd_dual(const Config &cfg, Format fmt)
{
    std::cout << render(dual_table(load(cfg)), fmt);
    return kPass;
}

int cmd_verify(const Config &cfg, Format fmt)
{
    std::vector<BHMatrix> ms;
    std::optional<BHMatrix> user;
    if (!cfg.matrix.empty()) user = load(cfg);
    SuiteResult r;
    if (cfg.suite == "quasiiso") {
        ms = small_corpus(12);
        if (user) ms.push_back(*user);
        r = suite_quasiiso(ms, cfg.window);
    } else {
        ms = corpus();
        if (user) ms.push_back(*user);
        if (cfg.suite == "chain") r = suite_chain(ms, cfg.seed, cfg.cases);
        else if (cfg.suite == "grading") r = suite_grading(ms, cfg.seed, cfg.cases);
        else if (cfg.suite == "star") r = suite_star(ms, cfg.seed, cfg.cases);
        else if (cfg.suite == "duality") r = suite_duality(ms, cfg.seed, cfg.cases);
        else if (cfg.suite == "eigenvalue") r = suite_eigenvalue(ms);
        else throw ParseError("unknown suite " + cfg.suite);
    }
    const bool ok = r.ok();
    if (fmt == Format::Json) {
        Json j{{"suite", r.name}, {"matrices", ms.size()}, {"cases", r.cases}, {"failures", r.failures},
               {"pass", ok}};
        if (!ok) j["first_failure"] = r.first_failure;
        if (!r.notes.empty()) j["notes"] = r.notes;
        std::cout << j.dump(2) << "\n";
    } else if (fmt == Format::Csv) {
        Table t{{"suite", "matrices", "cases", "failures", "result"}, {}};
        t.add({r.name, Cell(static_cast<std::int64_t>(ms.size())), Cell(static_cast<std::int64_t>(r.cases)),
               Cell(static_cast<std::int64_t>(r.failures)), ok ? "pass" : "fail"});
        std::cout << render(t, fmt);
    } else {
        for (const auto &n : r.notes) std::cout << n << "\n";
        std::cout << "suite " << r.name << ": " << ms.size() << " matrices, " << r.cases << " cases, " << r.failures
                  << " failures: " << (ok ? "pass" : "fail") << "\n";
        if (!ok) std::cout << "first failure: " << r.first_failure << "\n";
    }
    return ok ? kPass : kFail;
}

std::string digits_text(const PadicPi &x)
{
    auto [v, d] = x.digits(6);
    if (d.empty()) return "O(π" + superscript(x.prec()) + ")";
    std::vector<std::string> s;
    for (int k : d) s.push_back(std::to_string(k));
    return "π" + superscript(v) + "·(" + join(s, " ") + (x.prec() - v > 6 ? " …" : "") + ")";
}

int cmd_frobenius(const Config &cfg, Format fmt)
{
    auto m = load(cfg);
    const std::int64_t p = cfg.prime;
    if (p <= 0) throw ParseError("missing --prime");
    const std::int64_t prec = cfg.precision ? cfg.precision : 2 * (p - 1);
    Context c(m);
    require_prime_coprime(c, p);
    if (prec < p - 1) throw Error(ErrorKind::PrecisionLoss, "precision must be at least p-1");
    auto T = tfr_matrix(m, p, prec);

    Table t{{"source", "target", "sigma_power", "kappa_form", "unit_residue", "pi_digits", "certified_prec"}, {}};
    for (std::size_t j = 0; j < T.size(); ++j)
        for (std::size_t i = 0; i < T.size(); ++i) {
            const auto &x = T.entries[i][j];
            if (x.is_zero()) continue;
            auto kf = kappa_form(x);
            const std::int64_t r = x.sigma_power();
            PadicPi P = r >= 0 ? x.component(r) : PadicPi(p);
            auto [v, d] = P.digits(6);
            Cell kc("mixed", nullptr), uc("-", nullptr);
            if (kf) {
                std::string s = "κ" + superscript(kf->r) + " p" + superscript(kf->k);
                if (kf->j) s += " π" + superscript(kf->j);
                kc = Cell(s, Json{{"kappa", kf->r}, {"p", kf->k}, {"pi", kf->j}});
                uc = Cell(static_cast<std::int64_t>(kf->unit.unit_residue()));
            }
            t.add({mono_cell(T.basis.entries[j].mono), mono_cell(T.basis.entries[i].mono), Cell(r), kc, uc,
                   Cell(digits_text(P), Json{{"valuation", v}, {"digits", d}}), Cell(x.prec())});
        }

    std::optional<CommutationReport> cr;
    if (cfg.check_duality) cr = verify_commutation(m, p, prec);

    if (fmt == Format::Json) {
        Json j{{"p", p}, {"precision", prec}, {"certified", T.certified()}, {"diagonal", T.is_diagonal()},
               {"entries", table_json(t)}};
        if (cr)
            j["commutation"] = {{"min_valuation", cr->min_valuation >= kExact ? Json("exact") : Json(cr->min_valuation)},
                                {"certified", cr->certified},
                                {"entries", cr->entries},
                                {"pass", cr->ok()}};
        std::cout << j.dump(2) << "\n";
    } else {
        if (fmt == Format::Pretty)
            std::cout << "p=" << p << " precision=" << prec << " certified=" << T.certified()
                      << " diagonal=" << (T.is_diagonal() ? "yes" : "no") << "\n";
        std::cout << render(t, fmt);
        if (cr && fmt == Format::Pretty)
            std::cout << "commutation: " << cr->entries << " entries, min valuation "
                      << (cr->min_valuation >= kExact ? std::string("exact") : std::to_string(cr->min_valuation))
                      << ", certified " << cr->certified << ": " << (cr->ok() ? "pass" : "fail") << "\n";
    }
    return cr && !cr->ok() ? kFail : kPass;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Berglund-Hubsch duality toolkit"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App *sub) {
        sub->add_option("-m,--matrix", cfg.matrix, "exponent matrix as JSON, or a file holding it");
        sub->add_option("--format", cfg.format, "pretty, json or csv")->check(CLI::IsMember({"pretty", "json", "csv"}));
        return sub;
    };
    auto *classify = common(app.add_subcommand("classify", "decompose into chains and loops"));
    auto *group = common(app.add_subcommand("group", "elements of G_A and G_AT"));
    auto *basis = common(app.add_subcommand("basis", "orbifold cohomology basis with gradings"));
    auto *dual = common(app.add_subcommand("dual", "duality pairs between C_A and C_AT"));
    auto *verify = common(app.add_subcommand("verify", "run a property suite"));
    verify->add_option("--suite", cfg.suite)
        ->required()
        ->check(CLI::IsMember({"chain", "grading", "star", "duality", "eigenvalue", "quasiiso"}));
    verify->add_option("--seed", cfg.seed);
    verify->add_option("--cases", cfg.cases, "random cases per matrix");
    verify->add_option("--window", cfg.window);
    auto *frob = common(app.add_subcommand("frobenius", "twisted Frobenius matrix"));
    frob->add_option("-p,--prime", cfg.prime)->required();
    frob->add_option("--precision", cfg.precision, "in pi-units (default 2(p-1))");
    frob->add_flag("--check-duality", cfg.check_duality);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kParse;
    }

    try {
        Format fmt = parse_format(cfg.format);
        if (*classify) return cmd_classify(cfg, fmt);
        if (*group) return cmd_group(cfg, fmt);
        if (*basis) return cmd_basis(cfg, fmt);
        if (*dual) return cmd_dual(cfg, fmt);
        if (*verify) return cmd_verify(cfg, fmt);
        if (*frob) return cmd_frobenius(cfg, fmt);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
    return kPass;
}
