#include "lamfrac/driver.hpp"

#include <filesystem>
#include <fstream>

#include "lamfrac/csvio.hpp"
#include "lamfrac/homogenization.hpp"

namespace lamfrac {

namespace {

void write_release_csv(const std::string& dir, const std::string& name,
                       const ReleaseCurve& c, Manifest& man) {
    CsvWriter w(dir + "/" + name, "l,energy,release,flag");
    for (std::size_t i = 0; i < c.tips.size(); ++i)
        w.row_with_tag({c.tips[i], c.energy[i], c.release[i]}, to_string(c.flag[i]));
    man.add_file(name);
}

void write_trace_csv(const std::string& dir, const std::string& name,
                     const EvolutionTrace& tr, Manifest& man) {
    CsvWriter w(dir + "/" + name, "t,f,tip,elastic,dissipated,work,jump_loss");
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        w.row({tr.times[k], tr.f[k], tr.tip[k], tr.elastic[k], tr.dissipated[k], tr.work[k],
               tr.jump_loss[k]});
    man.add_file(name);
}

void write_jumps_csv(const std::string& dir, const std::string& name,
                     const std::vector<JumpCost>& jumps, Manifest& man) {
    CsvWriter w(dir + "/" + name, "t,l_minus,l_plus,delta_cost,energy_drop");
    for (const JumpCost& j : jumps)
        w.row({j.jump.t, j.jump.l_minus, j.jump.l_plus, j.finsler_cost, j.energy_drop});
    man.add_file(name);
}

int command_solve(const RunConfig& cfg, const std::string& dir, Manifest& man) {
    CrackedMesh mesh = build_mesh(cfg.spec, cfg.mesh, cfg.initial_tip());
    DisplacementField f = solve(mesh, Datum::step(), cfg.tol);
    {
        CsvWriter w(dir + "/solve.csv", "l,energy");
        w.row({mesh.crack_tip, condensed_energy(mesh, f)});
        man.add_file("solve.csv");
    }
    if (cfg.dump_mesh) {
        mesh.dump(dir + "/mesh.txt");
        man.add_file("mesh.txt");
    }
    return 0;
}

int command_release(const RunConfig& cfg, const std::string& dir, Manifest& man,
                    unsigned threads) {
    ReleaseCurve c = release_curve(cfg.spec, cfg.mesh, Datum::step(), cfg.tol, threads);
    write_release_csv(dir, "release.csv", c, man);
    return 0;
}

int command_evolve(const RunConfig& cfg, const std::string& dir, Manifest& man,
                   unsigned threads) {
    ReleaseCurve c = release_curve(cfg.spec, cfg.mesh, Datum::step(), cfg.tol, threads);
    TipToughness tough = lattice_toughness(cfg.spec, c.tips);
    LoadProgram load = cfg.make_load();
    EvolutionTrace tr = load.monotone() ? evolve(c, tough, load, cfg.initial_tip())
                                        : nonmonotone_wrap(c, tough, load, cfg.initial_tip());
    write_trace_csv(dir, "trace.csv", tr, man);
    write_jumps_csv(dir, "jumps.csv", jump_cost(tr, c, tough), man);
    GriffithReport rep = griffith_check(tr, c, tough, 1e-8);
    man.note("griffith_check", rep.pass ? "pass" : "FAIL");
    man.note("identity_residual", format_g17(energy_identity_residual(tr)));
    return 0;
}

int command_homogenize(const RunConfig& cfg, const std::string& dir, Manifest& man) {
    const HomogenizedModel h = homogenized_model(cfg.spec);
    std::ofstream out(dir + "/homogenize.txt");
    std::string line = "mu_hom1=" + format_g17(h.mu_hom1) + ", mu_hom2=" +
                       format_g17(h.mu_hom2) + ", gc_hom=" + format_g17(h.gc_hom) +
                       ", gc_eff=" +
                       (h.gc_eff_closed_form ? format_g17(*h.gc_eff_closed_form)
                                             : std::string("n/a"));
    out << line << "\n";
    std::printf("%s\n", line.c_str());
    man.add_file("homogenize.txt");
    return 0;
}

int command_study(const RunConfig& cfg, const std::string& dir, Manifest& man,
                  unsigned threads) {
    StudyConfig sc;
    sc.spec = cfg.spec;
    sc.params = cfg.mesh;
    sc.load = cfg.make_load();
    sc.n_list = cfg.n_list;
    sc.probes = cfg.probe_points();
    sc.l0 = cfg.initial_tip();
    sc.tol = cfg.tol;
    sc.threads = threads;
    StudyResult res = run_study(sc, Datum::step());

    for (std::size_t i = 0; i < res.curves.size(); ++i) {
        const std::string tag = "n" + std::to_string(cfg.n_list[i]);
        write_release_csv(dir, "release_" + tag + ".csv", res.curves[i], man);
        write_trace_csv(dir, "trace_" + tag + ".csv", res.traces[i], man);
    }
    write_release_csv(dir, "release_hom.csv", res.hom_curve, man);
    write_trace_csv(dir, "trace_hom.csv", res.hom_trace, man);

    {
        CsvWriter w(dir + "/summary.csv", "n,probe_l,ratio,gc_eff,d_n,identity_residual");
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
            for (const EffEstimate& e : res.estimates)
                w.row({double(cfg.n_list[i]), e.l, e.w_n[i],
                       (i + 1 == cfg.n_list.size() ? e.gc_eff : e.g_hom / e.w_n[i]),
                       res.d_n[i], res.identity_residual[i]});
        man.add_file("summary.csv");
    }
    man.note("gc_eff_source", res.gc_eff_from_closed_form ? "closed-form" : "estimate");
    return 0;
}

} // namespace

int run_command(const std::string& command, const RunConfig& cfg, const std::string& out_dir,
                unsigned threads) {
    std::filesystem::create_directories(out_dir);
    Manifest man(out_dir, fnv1a64(cfg.raw_text), cfg.tol);
    man.note("command", command);
    try {
        int rc;
        if (command == "solve") rc = command_solve(cfg, out_dir, man);
        else if (command == "release") rc = command_release(cfg, out_dir, man, threads);
        else if (command == "evolve") rc = command_evolve(cfg, out_dir, man, threads);
        else if (command == "homogenize") rc = command_homogenize(cfg, out_dir, man);
        else if (command == "study") rc = command_study(cfg, out_dir, man, threads);
        else throw ConfigError({"unknown command: " + command});
        man.write();
        return rc;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        std::ofstream diag(out_dir + "/diagnostics.txt");
        diag << "command: " << command << "\n" << "error: " << e.what() << "\n";
        man.add_file("diagnostics.txt");
        man.write();
        return 2;
    }
}

} // namespace lamfrac
