#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqforms/congruence.hpp"
#include "sqforms/descent.hpp"
#include "sqforms/errors.hpp"
#include "sqforms/pipeline.hpp"
#include "sqforms/trace_json.hpp"

namespace sqforms {
namespace cli {

// Exit codes: 0 success; 2 no representation exists; 3 verification
// reject; 64 usage error; 65 work-budget exceeded; 1 other failure.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kNoRepresentation = 2,
    kVerifyReject = 3,
    kUsage = 64,
    kBudget = 65,
};

namespace detail_cli {

inline Int parse_int_arg(const std::string& s, const std::string& what) {
    if (!sqforms::detail::valid_decimal(s))
        throw domain_error(what + " must be a decimal integer, got '" + s + "'");
    return Int(s);
}

inline std::vector<Int> parse_root_list(const std::string& csv) {
    std::vector<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_int_arg(item, "root"));
    return out;
}

inline std::string power_term(const Int& v) { return v.str() + "^2"; }

inline std::string form_text(FormKind k, const Int& x, const Int& y) {
    std::string s = power_term(x) + " + ";
    if (coefficient(k) != 1) s += std::to_string(coefficient(k)) + "*";
    s += power_term(y);
    return s;
}

inline std::string form_name(FormKind k) {
    if (k == FormKind::d1) return "x^2 + y^2";
    return "x^2 + " + std::to_string(coefficient(k)) + "*y^2";
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot open '" + path + "' for writing");
    f << bytes;
    if (!f) throw error("failed writing '" + path + "'");
}

inline std::string traces_to_array_string(const std::vector<DescentTrace>& traces) {
    nlohmann::json arr = nlohmann::json::array();
    for (const DescentTrace& t : traces) arr.push_back(serialize_trace(t));
    return arr.dump() + "\n";
}

inline void require_verified(const std::vector<DescentTrace>& traces) {
    for (const DescentTrace& t : traces) {
        Verdict v = verify_trace(t);
        if (!v) throw error("internal trace failed verification: " + v.reason);
    }
}

} // namespace detail_cli

// Run one subcommand. Results go to `out`, diagnostics to `err`; the
// return value follows the ExitCode contract. Every success path
// re-verifies its own result before printing anything.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"square representations with machine-checkable descent certificates",
                 "sqforms"};
    app.require_subcommand(0, 1);

    std::string arg_n, arg_roots, arg_file, arg_trace_path;
    std::string arg_lambda, arg_mu, arg_nu, arg_b, arg_c;
    int arg_d = 0;
    bool flag_json = false, flag_coprime = false, flag_best_effort = false;

    CLI::App* cmd_foursq = app.add_subcommand("foursq", "write N as a sum of four squares");
    cmd_foursq->add_option("N", arg_n, "number to represent")->required();
    cmd_foursq->add_flag("--json", flag_json, "emit JSON");
    cmd_foursq->add_option("--trace", arg_trace_path, "write descent certificates to this file");

    CLI::App* cmd_form = app.add_subcommand("form", "write N as x^2 + D*y^2 if possible");
    cmd_form->add_option("--d", arg_d, "form coefficient D")->required()->check(CLI::Range(1, 3));
    cmd_form->add_option("N", arg_n, "number to represent")->required();
    cmd_form->add_flag("--json", flag_json, "emit JSON");
    cmd_form->add_option("--trace", arg_trace_path, "write descent certificates to this file");

    CLI::App* cmd_descend = app.add_subcommand("descend", "run one descent from a seed multiple");
    cmd_descend->add_option("--d", arg_d, "form: 1, 2, 3, or 4 for four squares")
        ->required()->check(CLI::Range(1, 4));
    cmd_descend->add_option("--modulus", arg_n, "target divisor N")->required();
    cmd_descend->add_option("--roots", arg_roots, "comma-separated roots a,b[,c,d]")->required();
    cmd_descend->add_flag("--best-effort", flag_best_effort,
                          "attempt composite moduli; may report failure");
    cmd_descend->add_flag("--json", flag_json, "emit JSON");
    cmd_descend->add_option("--trace", arg_trace_path, "write the descent certificate to this file");

    CLI::App* cmd_congruence =
        app.add_subcommand("congruence", "solve lambda*x^2 + mu*y^2 + nu*z^2 = 0 (mod N)");
    cmd_congruence->add_option("--lambda", arg_lambda)->required();
    cmd_congruence->add_option("--mu", arg_mu)->required();
    cmd_congruence->add_option("--nu", arg_nu)->required();
    cmd_congruence->add_option("--modulus", arg_n, "odd prime modulus")->required();
    cmd_congruence->add_flag("--require-coprime", flag_coprime,
                             "only accept solutions with x, y, z all prime to N");
    cmd_congruence->add_flag("--json", flag_json, "emit JSON");

    CLI::App* cmd_lagrange =
        app.add_subcommand("lagrange", "solve p^2 - B*q^2 - C = 0 (mod A)");
    cmd_lagrange->add_option("--b", arg_b)->required();
    cmd_lagrange->add_option("--c", arg_c)->required();
    cmd_lagrange->add_option("--modulus", arg_n, "odd prime modulus A")->required();
    cmd_lagrange->add_flag("--json", flag_json, "emit JSON");

    CLI::App* cmd_verify = app.add_subcommand("verify", "recheck a trace file");
    cmd_verify->add_option("file", arg_file, "trace document or array of documents")->required();

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "four-square every N in [0, max] and verify");
    cmd_sweep->add_option("--max", arg_n, "inclusive upper bound")->required();
    cmd_sweep->add_flag("--json", flag_json, "emit JSON");

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    if (app.get_subcommands().empty()) {
        out << app.help();
        return kUsage;
    }

    try {
        if (*cmd_foursq) {
            Int n = detail_cli::parse_int_arg(arg_n, "N");
            FourSquaresResult r = four_squares(n);
            if (r.rep.N != n ||
                r.rep.a * r.rep.a + r.rep.b * r.rep.b + r.rep.c * r.rep.c + r.rep.d * r.rep.d != n)
                throw error("internal norm check failed");
            detail_cli::require_verified(r.traces);
            if (!arg_trace_path.empty())
                detail_cli::write_file(arg_trace_path, detail_cli::traces_to_array_string(r.traces));
            if (flag_json) {
                nlohmann::json j{{"n", n.str()},
                                 {"representation", {r.rep.a.str(), r.rep.b.str(),
                                                     r.rep.c.str(), r.rep.d.str()}}};
                out << j.dump() << "\n";
            } else {
                out << n << " = " << detail_cli::power_term(r.rep.a) << " + "
                    << detail_cli::power_term(r.rep.b) << " + "
                    << detail_cli::power_term(r.rep.c) << " + "
                    << detail_cli::power_term(r.rep.d) << "\n";
            }
            return kOk;
        }
        if (*cmd_form) {
            FormKind k = form_kind(arg_d);
            Int n = detail_cli::parse_int_arg(arg_n, "N");
            auto r = represent_form(k, n);
            if (!r) {
                if (flag_json) {
                    nlohmann::json j{{"d", std::to_string(arg_d)},
                                     {"n", n.str()},
                                     {"representable", false}};
                    out << j.dump() << "\n";
                } else {
                    out << n << " is not representable as " << detail_cli::form_name(k) << "\n";
                }
                return kNoRepresentation;
            }
            if (r->rep.N != n ||
                r->rep.x * r->rep.x + coefficient(k) * r->rep.y * r->rep.y != n)
                throw error("internal norm check failed");
            detail_cli::require_verified(r->traces);
            if (!arg_trace_path.empty())
                detail_cli::write_file(arg_trace_path, detail_cli::traces_to_array_string(r->traces));
            if (flag_json) {
                nlohmann::json j{{"d", std::to_string(arg_d)},
                                 {"n", n.str()},
                                 {"representable", true},
                                 {"x", r->rep.x.str()},
                                 {"y", r->rep.y.str()}};
                out << j.dump() << "\n";
            } else {
                out << n << " = " << detail_cli::form_text(k, r->rep.x, r->rep.y) << "\n";
            }
            return kOk;
        }
        if (*cmd_descend) {
            Int n = detail_cli::parse_int_arg(arg_n, "modulus");
            std::vector<Int> roots = detail_cli::parse_root_list(arg_roots);
            TargetForm target = TargetForm::from_tag(arg_d);
            SeedMultiple seed = make_seed(target, n, roots);
            DescentTrace trace;
            std::vector<Int> rep;
            if (target.is_four()) {
                auto [qr, tr] = descend_four(seed, flag_best_effort);
                trace = std::move(tr);
                rep = {qr.a, qr.b, qr.c, qr.d};
            } else {
                auto [fr, tr] = descend_form(target.kind(), seed, flag_best_effort);
                trace = std::move(tr);
                rep = {fr.x, fr.y};
            }
            Verdict v = verify_trace(trace);
            if (!v) throw error("internal trace failed verification: " + v.reason);
            if (!arg_trace_path.empty())
                detail_cli::write_file(arg_trace_path, trace_to_string(trace));
            if (flag_json) {
                nlohmann::json reps = nlohmann::json::array();
                for (const Int& x : rep) reps.push_back(x.str());
                nlohmann::json j{{"d", std::to_string(arg_d)},
                                 {"n", n.str()},
                                 {"representation", reps},
                                 {"steps", std::to_string(trace.steps.size())}};
                out << j.dump() << "\n";
            } else {
                out << n << " =";
                for (std::size_t i = 0; i < rep.size(); ++i) {
                    if (i) out << " +";
                    if (i == 1 && !target.is_four() && coefficient(target.kind()) != 1)
                        out << " " << coefficient(target.kind()) << "*" << detail_cli::power_term(rep[i]);
                    else
                        out << " " << detail_cli::power_term(rep[i]);
                }
                out << "  (" << trace.steps.size()
                    << (trace.steps.size() == 1 ? " step)" : " steps)") << "\n";
            }
            return kOk;
        }
        if (*cmd_congruence) {
            Int n = detail_cli::parse_int_arg(arg_n, "modulus");
            Int lambda = detail_cli::parse_int_arg(arg_lambda, "lambda");
            Int mu = detail_cli::parse_int_arg(arg_mu, "mu");
            Int nu = detail_cli::parse_int_arg(arg_nu, "nu");
            TernarySolution s;
            try {
                s = solve_ternary(lambda, mu, nu, n, flag_coprime);
            } catch (const no_solution_error& e) {
                err << e.what() << "\n";
                return kNoRepresentation;
            }
            if (!s.verifies()) throw error("internal congruence check failed");
            if (flag_json) {
                nlohmann::json j{{"lambda", lambda.str()}, {"mu", mu.str()}, {"nu", nu.str()},
                                 {"modulus", n.str()},     {"x", s.x.str()}, {"y", s.y.str()},
                                 {"z", s.z.str()},         {"coprime", s.coprime}};
                out << j.dump() << "\n";
            } else {
                out << "x=" << s.x << " y=" << s.y << " z=" << s.z
                    << (s.coprime ? "  (all prime to the modulus)" : "") << "\n";
            }
            return kOk;
        }
        if (*cmd_lagrange) {
            Int a = detail_cli::parse_int_arg(arg_n, "modulus");
            Int b = detail_cli::parse_int_arg(arg_b, "B");
            Int c = detail_cli::parse_int_arg(arg_c, "C");
            auto [p, q] = solve_lagrange(b, c, a);
            if ((p * p - b * q * q - c) % a != 0) throw error("internal congruence check failed");
            if (flag_json) {
                nlohmann::json j{{"b", b.str()}, {"c", c.str()}, {"modulus", a.str()},
                                 {"p", p.str()}, {"q", q.str()}};
                out << j.dump() << "\n";
            } else {
                out << "p=" << p << " q=" << q << "\n";
            }
            return kOk;
        }
        if (*cmd_verify) {
            std::ifstream f(arg_file, std::ios::binary);
            if (!f) {
                err << "cannot read '" << arg_file << "'\n";
                return kUsage;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            nlohmann::json doc = nlohmann::json::parse(buf.str(), nullptr, false);
            if (doc.is_discarded()) {
                out << "REJECT: file is not valid JSON\n";
                return kVerifyReject;
            }
            std::vector<nlohmann::json> docs;
            if (doc.is_array())
                docs.assign(doc.begin(), doc.end());
            else
                docs.push_back(doc);
            for (std::size_t i = 0; i < docs.size(); ++i) {
                DescentTrace t;
                try {
                    t = parse_trace(docs[i]);
                } catch (const parse_error& e) {
                    out << "REJECT trace " << i << ": " << e.what() << "\n";
                    return kVerifyReject;
                }
                Verdict v = verify_trace(t);
                if (!v) {
                    out << "REJECT trace " << i << ": " << v.reason;
                    if (v.step) out << " (step " << *v.step << ")";
                    out << "\n";
                    return kVerifyReject;
                }
            }
            out << "OK: " << docs.size() << (docs.size() == 1 ? " trace" : " traces")
                << " verified\n";
            return kOk;
        }
        if (*cmd_sweep) {
            Int max = detail_cli::parse_int_arg(arg_n, "max");
            if (max < 0) throw domain_error("max must be >= 0");
            Int count = 0;
            for (Int i = 0; i <= max; ++i) {
                FourSquaresResult r = four_squares(i);
                if (r.rep.a * r.rep.a + r.rep.b * r.rep.b + r.rep.c * r.rep.c +
                        r.rep.d * r.rep.d != i) {
                    out << "FAIL at N=" << i << ": norm mismatch\n";
                    return kVerifyReject;
                }
                for (const DescentTrace& t : r.traces) {
                    Verdict v = verify_trace(t);
                    if (!v) {
                        out << "FAIL at N=" << i << ": " << v.reason << "\n";
                        return kVerifyReject;
                    }
                }
                ++count;
            }
            if (flag_json) {
                nlohmann::json j{{"max", max.str()}, {"count", count.str()}, {"verified", true}};
                out << j.dump() << "\n";
            } else {
                out << "swept 0.." << max << ": " << count << " representations verified\n";
            }
            return kOk;
        }
    } catch (const budget_error& e) {
        err << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const no_solution_error& e) {
        err << e.what() << "\n";
        return kNoRepresentation;
    } catch (const seed_error& e) {
        err << "seed: " << e.what() << "\n";
        return kUsage;
    } catch (const parse_error& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const domain_error& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const descent_error& e) {
        err << e.what() << "\n";
        return kFailure;
    } catch (const error& e) {
        err << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

} // namespace cli
} // namespace sqforms
