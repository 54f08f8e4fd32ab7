#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

#include "pompeiu/pompeiu.hpp"

using namespace pompeiu;

namespace {

json roots_json(const RecurrenceWitness& w) {
    json a = json::array();
    for (const auto& [z, mult] : w.roots)
        a.push_back({{"re", format_float(z.real())},
                     {"im", format_float(z.imag())},
                     {"multiplicity", mult}});
    return a;
}

std::string root_text(const std::complex<double>& z) {
    std::string s = format_float(z.real());
    s += (z.imag() < 0 ? "-" : "+") + format_float(std::fabs(z.imag())) + "i";
    return s;
}

int cmd_check(const std::string& group_path, const std::string& subset_text, bool as_json) {
    auto G = load_group_file(group_path);
    Subset K(G, parse_subset_indices(subset_text));
    auto v = is_pompeiu_set(K);
    if (as_json) {
        std::cout << render_verdict_json(v).dump(2) << "\n";
        return 0;
    }
    std::string rank = std::to_string(v.ideal_rank) + "/" + std::to_string(G.order);
    if (v.is_pompeiu) {
        std::cout << "Pompeiu (rank " << rank << ")\n";
    } else {
        std::cout << "NOT Pompeiu (rank " << rank
                  << "); witness: " << render_function(v.witness_basis.front());
        if (v.witness_basis.size() > 1)
            std::cout << " (witness space dimension " << v.witness_basis.size() << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_witness(const std::string& group_path, const std::string& subset_text,
                bool as_json) {
    auto G = load_group_file(group_path);
    Subset K(G, parse_subset_indices(subset_text));
    auto v = is_pompeiu_set(K);
    if (as_json)
        std::cout << render_verdict_json(v).dump(2) << "\n";
    else if (v.is_pompeiu)
        std::cout << "Pompeiu (no witness)\n";
    else
        for (std::size_t i = 0; i < v.witness_basis.size(); ++i)
            std::cout << "w" << i << ": " << render_function(v.witness_basis[i]) << "\n";
    return v.is_pompeiu ? 1 : 0;
}

int cmd_classify(const std::string& group_path, int max_size, int jobs,
                 const std::string& format) {
    auto G = load_group_file(group_path);
    auto report = build_report(G, ClassifyOptions{max_size, jobs});
    std::cout << render_report(report, format);
    return 0;
}

int cmd_normal_subgroups(const std::string& group_path, bool as_json) {
    auto G = load_group_file(group_path);
    auto list = normal_subgroups(G).subgroups;
    if (as_json) {
        json j;
        j["format"] = "pompeiu-normal-subgroups/1";
        j["group"] = {{"label", G.label}, {"order", G.order}};
        j["normal_subgroups"] = json::array();
        for (const auto& n : list) j["normal_subgroups"].push_back(subset_json(n));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& n : list)
        std::cout << "{" << n.to_string() << "} (order " << n.size() << ", index "
                  << G.order / n.size() << ")\n";
    return 0;
}

int cmd_center(const std::string& group_path, bool as_json) {
    auto G = load_group_file(group_path);
    int dim = center_dimension(G);
    auto sums = class_sums(G);
    if (as_json) {
        json j;
        j["format"] = "pompeiu-center/1";
        j["group"] = {{"label", G.label}, {"order", G.order}};
        j["dimension"] = dim;
        j["class_sums"] = json::array();
        for (const auto& s : sums) j["class_sums"].push_back(function_json(s, G.order));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "center dimension: " << dim << " (" << sums.size()
              << " conjugacy classes)\n";
    for (const auto& s : sums) std::cout << render_function(s) << "\n";
    return 0;
}

IntSet lattice_subset(const std::string& subset_text) {
    IntSet K;
    for (long long v : parse_integer_list(subset_text)) K.push_back(v);
    return K;
}

int cmd_lattice_check(const std::string& subset_text, bool as_json) {
    auto K = lattice_subset(subset_text);
    bool pompeiu = is_pompeiu_subset_Z(K);
    if (as_json) {
        json j;
        j["format"] = "pompeiu-lattice-check/1";
        j["subset"] = K;
        j["is_pompeiu"] = pompeiu;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Pompeiu in Z: " << (pompeiu ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_lattice_witness(const std::string& subset_text, int window, bool as_json) {
    auto K = lattice_subset(subset_text);
    auto w = recurrence_witness(K, window);
    if (as_json) {
        json j;
        j["format"] = "pompeiu-lattice-witness/1";
        j["subset"] = K;
        j["window"] = w.window;
        j["exact"] = w.exact;
        j["period"] = w.exact ? json(w.period) : json(nullptr);
        j["residual"] = format_float(w.residual);
        j["roots"] = roots_json(w);
        if (w.exact) {
            j["exact_samples"] = json::array();
            for (const auto& s : w.exact_samples)
                j["exact_samples"].push_back(serialize_scalar(s));
        } else {
            j["exact_samples"] = nullptr;
        }
        j["samples"] = json::array();
        for (const auto& z : w.samples)
            j["samples"].push_back(
                {{"re", format_float(z.real())}, {"im", format_float(z.imag())}});
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (w.exact) {
        std::cout << "exact witness with period " << w.period << "\n";
        std::cout << "repeating block:";
        for (int n = 0; n < w.period; ++n)
            std::cout << (n ? ", " : " ") << serialize_scalar(w.exact_samples[w.window + n]);
        std::cout << "\n";
    } else {
        std::cout << "numerical witness on window " << w.window << "\n";
    }
    std::cout << "roots:";
    for (const auto& [z, mult] : w.roots) {
        std::cout << " " << root_text(z);
        if (mult > 1) std::cout << " (x" << mult << ")";
    }
    std::cout << "\n";
    std::cout << "residual: " << format_float(w.residual) << "\n";
    return 0;
}

int cmd_lattice_energy(const std::string& subset_text, int window, bool as_json) {
    auto K = lattice_subset(subset_text);
    auto w = recurrence_witness(K, window);
    auto E = energy_profile(w);
    if (as_json) {
        json j;
        j["format"] = "pompeiu-lattice-energy/1";
        j["subset"] = K;
        j["window"] = w.window;
        j["energies"] = json::array();
        for (auto e : E) j["energies"].push_back(format_float(static_cast<double>(e)));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "n,energy\n";
    for (std::size_t n = 0; n < E.size(); ++n)
        std::cout << n << "," << format_float(static_cast<double>(E[n])) << "\n";
    return 0;
}

int cmd_selftest(bool as_json) {
    auto report = run_selftest();
    if (as_json) {
        json j;
        j["format"] = "pompeiu-selftest/1";
        j["groups"] = json::array();
        for (const auto& g : report.groups)
            j["groups"].push_back(
                {{"label", g.label}, {"order", g.order}, {"checks", g.checks}});
        j["lattice_checks"] = report.lattice_checks;
        j["total_checks"] = report.total_checks;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& g : report.groups)
        std::cout << "ok " << g.label << " (order " << g.order << ", " << g.checks
                  << " checks)\n";
    std::cout << "ok lattice (" << report.lattice_checks << " checks)\n";
    std::cout << "all " << report.total_checks << " checks passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sided Pompeiu property: finite groups and the integers"};
    app.require_subcommand(1);

    std::string group_path, subset_text, format = "md";
    int max_size = 0, jobs = 1, window = 100;
    bool as_json = false;

    auto add_group = [&](CLI::App* cmd) {
        cmd->add_option("--group", group_path, "group file")->required();
    };
    auto add_subset = [&](CLI::App* cmd) {
        cmd->add_option("--subset", subset_text, "comma-separated elements")->required();
    };
    auto add_json = [&](CLI::App* cmd) {
        cmd->add_flag("--json", as_json, "machine-readable output");
    };

    auto* check = app.add_subcommand("check", "decide the Pompeiu property for a subset");
    add_group(check);
    add_subset(check);
    add_json(check);

    auto* witness = app.add_subcommand("witness", "print a witness basis, if any");
    add_group(witness);
    add_subset(witness);
    add_json(witness);

    auto* classify = app.add_subcommand("classify", "classify subsets of a group");
    add_group(classify);
    classify->add_option("--max-size", max_size, "largest subset size (0: all)");
    classify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    classify->add_option("--format", format, "csv|md|json")
        ->check(CLI::IsMember({"csv", "md", "json"}));

    auto* normal = app.add_subcommand("normal-subgroups", "list the normal subgroups");
    add_group(normal);
    add_json(normal);

    auto* center = app.add_subcommand("center", "dimension and basis of the center");
    add_group(center);
    add_json(center);

    auto* lattice = app.add_subcommand("lattice", "subsets of the integers");
    lattice->require_subcommand(1);
    auto* lcheck = lattice->add_subcommand("check", "decide the Pompeiu property in Z");
    add_subset(lcheck);
    add_json(lcheck);
    auto* lwitness = lattice->add_subcommand("witness", "construct a recurrence witness");
    add_subset(lwitness);
    lwitness->add_option("--window", window, "half-width N of the sample window");
    add_json(lwitness);
    auto* lenergy = lattice->add_subcommand("energy", "cumulative energies of a witness");
    add_subset(lenergy);
    lenergy->add_option("--window", window, "half-width N of the sample window");
    add_json(lenergy);

    auto* selftest = app.add_subcommand("selftest", "run the embedded invariant suite");
    add_json(selftest);

    try {
        app.parse(argc, argv);
        if (*check) return cmd_check(group_path, subset_text, as_json);
        if (*witness) return cmd_witness(group_path, subset_text, as_json);
        if (*classify) return cmd_classify(group_path, max_size, jobs, format);
        if (*normal) return cmd_normal_subgroups(group_path, as_json);
        if (*center) return cmd_center(group_path, as_json);
        if (*lattice) {
            if (*lcheck) return cmd_lattice_check(subset_text, as_json);
            if (*lwitness) return cmd_lattice_witness(subset_text, window, as_json);
            if (*lenergy) return cmd_lattice_energy(subset_text, window, as_json);
        }
        if (*selftest) return cmd_selftest(as_json);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency check failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
