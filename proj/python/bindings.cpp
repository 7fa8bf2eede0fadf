// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqotto/errors.hpp"
#include "sqotto/experiments.hpp"
#include "sqotto/mc_engine.hpp"
#include "sqotto/power.hpp"
#include "sqotto/q_star.hpp"
#include "sqotto/reservoirs.hpp"
#include "sqotto/scenario.hpp"
#include "sqotto/thermo.hpp"
#include "sqotto/trap.hpp"

namespace py = pybind11;
using namespace sqotto;

namespace {

py::dict cycle_record_dict(const CycleRecord& rec)
{
    py::dict d;
    py::list corners;
    for (const auto& c : rec.corners) {
        py::dict e;
        e["label"] = c.label;
        e["radial_energy"] = c.radial_energy.mean;
        e["radial_energy_error"] = c.radial_energy.error;
        e["mean_z"] = c.mean_z;
        e["omega_rad"] = c.omega_rad;
        e["temperature"] = c.temperature.mean;
        e["r"] = c.squeezing.r;
        corners.append(e);
    }
    d["corners"] = corners;
    d["work_net"] = rec.work_net;
    d["heat_in"] = rec.heat_in;
    d["heat_out"] = rec.heat_out;
    d["power"] = rec.power;
    d["cycle_time"] = rec.cycle_time;
    d["efficiency"] = rec.efficiency;
    d["efficiency_error"] = rec.efficiency_error;
    d["closure"] = rec.closure.mean;
    d["closure_error"] = rec.closure.error;
    d["flagged_fraction"] = rec.flagged_fraction;
    d["feasible"] = rec.feasible;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Squeezed-bath Otto engine: closed forms, Q*, trap model and Monte-Carlo cycles";
    m.attr("__version__") = SQOTTO_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<CycleParams>(m, "CycleParams")
        .def(py::init<>())
        .def(py::init([](double omega1, double omega2, double beta1, double beta2, double r,
                         double q1, double q2, double tau) {
                 return CycleParams{omega1, omega2, beta1, beta2, r, q1, q2, tau};
             }),
             py::arg("omega1"), py::arg("omega2"), py::arg("beta1"), py::arg("beta2"),
             py::arg("r") = 0.0, py::arg("q_star_1") = 1.0, py::arg("q_star_2") = 1.0,
             py::arg("tau") = 1.0)
        .def_readwrite("omega1", &CycleParams::omega1)
        .def_readwrite("omega2", &CycleParams::omega2)
        .def_readwrite("beta1", &CycleParams::beta1)
        .def_readwrite("beta2", &CycleParams::beta2)
        .def_readwrite("r", &CycleParams::r)
        .def_readwrite("q_star_1", &CycleParams::q_star_1)
        .def_readwrite("q_star_2", &CycleParams::q_star_2)
        .def_readwrite("tau", &CycleParams::tau)
        .def("validate", &CycleParams::validate);

    m.def("stroke_energies", [](const CycleParams& p) {
        const StrokeEnergies e = stroke_energies(p);
        return py::make_tuple(e.e_a, e.e_b, e.e_c, e.e_d);
    }, "Corner energies (E_A, E_B, E_C, E_D) in J.");
    m.def("efficiency", [](const CycleParams& p) { return efficiency(p); },
          "Cycle efficiency, or None outside the engine regime.");
    m.def("optimal_frequency_ratio", &optimal_frequency_ratio, py::arg("beta1"), py::arg("beta2"), py::arg("r"));
    m.def("efficiency_at_max_power", &efficiency_at_max_power, py::arg("beta1"), py::arg("beta2"), py::arg("r"));
    m.def("efficiency_asymptotic", &efficiency_asymptotic, py::arg("beta1"), py::arg("beta2"), py::arg("r"));
    m.def("generalized_carnot", &generalized_carnot, py::arg("beta1"), py::arg("beta2"), py::arg("r"));
    m.def("carnot", &carnot, py::arg("beta1"), py::arg("beta2"));
    m.def("curzon_ahlborn", &curzon_ahlborn, py::arg("beta1"), py::arg("beta2"));
    m.def("carnot_crossing_squeezing", &carnot_crossing_squeezing, py::arg("beta1"), py::arg("beta2"));
    m.def("thermal_mean_energy", &thermal_mean_energy, py::arg("omega"), py::arg("beta"));
    m.def("thermal_occupation", &thermal_occupation, py::arg("omega"), py::arg("beta"));
    m.def("squeezed_occupation", &squeezed_occupation, py::arg("n_thermal"), py::arg("r"));
    m.def("inverse_temperature", &inverse_temperature, py::arg("kelvin"));

    m.def("maximize_power_numeric", [](double beta1, double beta2, double r, double omega1, double tau) {
        const PowerOptimum opt = maximize_power_numeric(beta1, beta2, r, omega1, tau);
        py::dict d;
        d["engine"] = opt.regime == Regime::engine;
        d["ratio"] = opt.ratio;
        d["omega2"] = opt.omega2;
        d["power"] = opt.power;
        d["efficiency"] = opt.efficiency;
        return d;
    }, py::arg("beta1"), py::arg("beta2"), py::arg("r"), py::arg("omega1"), py::arg("tau") = 1.0);

    m.def("q_star_linear", [](double wi, double wf, double duration, int steps_per_period) {
        return compute_q_star(FrequencyRamp::linear(wi, wf, duration), steps_per_period);
    }, py::arg("omega_initial"), py::arg("omega_final"), py::arg("duration"),
          py::arg("steps_per_period") = 400);
    m.def("q_star", [](std::function<double(double)> omega, double duration, int steps_per_period) {
        return compute_q_star(FrequencyRamp{std::move(omega), duration}, steps_per_period);
    }, py::arg("omega"), py::arg("duration"), py::arg("steps_per_period") = 400,
          "Q* of an arbitrary protocol omega(t), t in [0, duration].");
    m.def("sudden_quench_q_star", &sudden_quench_q_star, py::arg("omega_initial"), py::arg("omega_final"));

    py::class_<TrapGeometry>(m, "TrapGeometry")
        .def(py::init<>())
        .def_readwrite("omega_ax", &TrapGeometry::omega_ax)
        .def_readwrite("omega_rad0", &TrapGeometry::omega_rad0)
        .def_readwrite("theta", &TrapGeometry::theta)
        .def_readwrite("r0", &TrapGeometry::r0)
        .def_readwrite("ion_mass", &TrapGeometry::ion_mass)
        .def_readwrite("a_max", &TrapGeometry::a_max)
        .def("validate", &TrapGeometry::validate);
    m.def("radial_frequency", &radial_frequency, py::arg("geom"), py::arg("z"), py::arg("modulation") = 0.0);
    m.def("axial_amplitude_for_ratio", &axial_amplitude_for_ratio, py::arg("geom"), py::arg("ratio"));
    m.def("max_frequency_ratio", &max_frequency_ratio, py::arg("geom"));

    m.def("ideal_squeezing", &ideal_squeezing, py::arg("delta_omega_fraction"));
    m.def("ideal_delta_omega_fraction", &ideal_delta_omega_fraction, py::arg("r"));

    m.def("calibrate_squeeze", [](const TrapGeometry& geom, const std::vector<double>& fractions,
                                  std::size_t ensemble, std::uint64_t seed, double temperature) {
        CalibrationSettings s;
        s.delta_omega_fractions = fractions;
        s.ensemble_size = ensemble;
        s.seed = seed;
        s.temperature = temperature;
        CalibrationTable table;
        {
            py::gil_scoped_release release;
            table = calibrate_squeeze(geom, s);
        }
        py::list rows;
        for (const auto& row : table.rows) {
            py::dict d;
            d["fraction"] = row.fraction;
            d["r"] = row.r;
            d["r_ideal"] = row.r_ideal;
            d["energy_before"] = row.energy_before;
            d["energy_after"] = row.energy_after;
            d["potential_before"] = row.potential_before;
            d["potential_after"] = row.potential_after;
            rows.append(d);
        }
        return rows;
    }, py::arg("geom"), py::arg("fractions"), py::arg("ensemble") = 2000, py::arg("seed") = 1,
          py::arg("temperature") = 1.0e-3 / 0.88);

    m.def("simulate_cycles", [](const TrapGeometry& geom, double frequency_ratio, double delta_omega_fraction,
                                double t_cold, double t_hot, std::size_t ensemble, int cycles,
                                std::uint64_t seed) {
        OttoSettings s;
        s.frequency_ratio = frequency_ratio;
        s.delta_omega_fraction = delta_omega_fraction;
        s.t_cold = t_cold;
        s.t_hot = t_hot;
        const OttoCycle cycle = make_otto_cycle(geom, s);
        const double dt = default_time_step(geom);
        std::vector<CycleRecord> records;
        {
            py::gil_scoped_release release;
            Ensemble e = Ensemble::thermal(geom, ensemble, t_cold, seed, 0, cycle.amplitude);
            thermalize(e, geom, BathConfig::cold(t_cold, s.gamma, s.gamma_t / s.gamma), dt);
            for (int k = 0; k < cycles; ++k)
                records.push_back(run_cycle(e, geom, cycle.schedule, dt));
        }
        py::list out;
        for (const auto& rec : records)
            out.append(cycle_record_dict(rec));
        return out;
    }, py::arg("geom"), py::arg("frequency_ratio"), py::arg("delta_omega_fraction") = 0.0,
          py::arg("t_cold") = 1.0e-3, py::arg("t_hot") = 1.0e-3 / 0.88, py::arg("ensemble") = 1000,
          py::arg("cycles") = 1, py::arg("seed") = 1,
          "Runs consecutive Otto cycles from a cold-equilibrated ensemble; one dict per cycle.");

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_static("load", &load_scenario, py::arg("path"))
        .def_static("parse", &parse_scenario, py::arg("text"))
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("ensemble", &Scenario::ensemble)
        .def_readwrite("repetitions", &Scenario::repetitions)
        .def_readwrite("r_targets", &Scenario::r_targets)
        .def_readwrite("beta_ratio", &Scenario::beta_ratio)
        .def("validate", &Scenario::validate)
        .def("hash", &Scenario::hash)
        .def("canonical", &Scenario::canonical);

    const auto command = [&m](const char* name, CommandResult (*fn)(const Scenario&, const std::string&)) {
        m.def(name, [fn](const Scenario& s, const std::string& out_dir) {
            CommandResult r;
            {
                py::gil_scoped_release release;
                r = fn(s, out_dir);
            }
            return py::make_tuple(r.exit_code, r.files);
        }, py::arg("scenario"), py::arg("out_dir"));
    };
    command("run_analytic_fig1", &cmd_analytic_fig1);
    command("run_analytic_table", &cmd_analytic_table);
    command("run_simulate_cycle", &cmd_simulate_cycle);
    command("run_simulate_sweep", &cmd_simulate_sweep);
    command("run_calibrate", &cmd_calibrate);
}
