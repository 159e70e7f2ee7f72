#include "tfd/runners.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tfd/parallel.hpp"

namespace tfd {

namespace {

std::string provenance_comment(const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& [k, v] : cfg.resolved_entries()) {
    os << "# " << k << " = " << v << "\n";
  }
  return os.str();
}

nlohmann::ordered_json provenance_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : cfg.resolved_entries()) j[k] = v;
  return j;
}

int resolve_cutoff(const RunConfig& cfg, const ModelParams& p, bool& converged) {
  converged = true;
  if (cfg.cutoff > 0) return cfg.cutoff;
  try {
    return choose_cutoff(p, cfg.policy);
  } catch (const NonConvergenceError&) {
    converged = false;
    return cfg.policy.max_cutoff;
  }
}

}  // namespace

std::vector<ThermalRow> run_thermal(const RunConfig& cfg) {
  std::vector<ThermalRow> rows(cfg.betas.size());
  parallel_for(cfg.betas.size(), cfg.threads, [&](std::size_t i) {
    ThermalRow& row = rows[i];
    row.beta = cfg.betas[i];
    try {
      const ModelParams p = cfg.model(row.beta);
      const DerivedParams dp = thermal_params(p);
      const ThermoObservables obs = thermo_observables(p);
      row.omega_eff = dp.omega_eff;
      row.lambda = dp.lambda;
      row.pair_coeff = dp.pair_coeff;
      row.partition = obs.partition;
      row.internal_energy = obs.internal_energy;
      row.entropy = obs.entropy;
      row.term_number = obs.term_number;
      row.term_raise = obs.term_raise;
      row.term_lower = obs.term_lower;
      row.sum_rule_residual =
          obs.term_number + 2.0 * obs.term_raise - obs.internal_energy;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return rows;
}

std::string thermal_csv(const RunConfig& cfg, const std::vector<ThermalRow>& rows) {
  std::ostringstream os;
  os << provenance_comment(cfg);
  os << "beta,D,lambda,re_E,im_E,Z,internal_energy,entropy,term_number,"
        "term_raise,term_lower,sum_rule_residual,error\n";
  for (const auto& r : rows) {
    os << format_double(r.beta) << ",";
    if (r.ok) {
      os << format_double(r.omega_eff) << "," << format_double(r.lambda) << ","
         << format_double(r.pair_coeff.real()) << ","
         << format_double(r.pair_coeff.imag()) << ","
         << format_double(r.partition) << ","
         << format_double(r.internal_energy) << ","
         << format_double(r.entropy) << "," << format_double(r.term_number)
         << "," << format_double(r.term_raise) << ","
         << format_double(r.term_lower) << ","
         << format_double(r.sum_rule_residual) << ",\n";
    } else {
      os << ",,,,,,,,,,,\"" << r.error << "\"\n";
    }
  }
  return os.str();
}

std::string thermal_json(const RunConfig& cfg, const std::vector<ThermalRow>& rows) {
  nlohmann::ordered_json j;
  j["config"] = provenance_json(cfg);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["beta"] = r.beta;
    if (r.ok) {
      row["D"] = r.omega_eff;
      row["lambda"] = r.lambda;
      row["re_E"] = r.pair_coeff.real();
      row["im_E"] = r.pair_coeff.imag();
      row["Z"] = r.partition;
      row["internal_energy"] = r.internal_energy;
      row["entropy"] = r.entropy;
      row["term_number"] = r.term_number;
      row["term_raise"] = r.term_raise;
      row["term_lower"] = r.term_lower;
      row["sum_rule_residual"] = r.sum_rule_residual;
    } else {
      row["error"] = r.error;
    }
    arr.push_back(std::move(row));
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

PhaseSpaceResult run_phase_space(const RunConfig& cfg) {
  PhaseSpaceResult out;
  out.params = cfg.model(cfg.betas.front());
  out.params.validate();
  out.cutoff = std::max(80, resolve_cutoff(cfg, out.params, out.converged));
  if (cfg.cutoff > 0) out.cutoff = cfg.cutoff;

  out.grid = wigner_closed_grid(out.params, cfg.grid);
  const DensityOperator rho = gibbs_density(out.params, out.cutoff, cfg.tol);
  const std::vector<double> qs = cfg.tomogram_points();

  out.audits.resize(cfg.frames.size());
  std::vector<std::string> errors(cfg.frames.size());
  parallel_for(cfg.frames.size(), cfg.threads, [&](std::size_t i) {
    try {
      out.audits[i] =
          tomogram_frame_audit(out.params, rho, out.grid, cfg.frames[i], qs, cfg.tol);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      out.audits[i].frame_f = cfg.frames[i].f;
      out.audits[i].frame_g = cfg.frames[i].g;
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) out.errors.push_back(e);
  }
  return out;
}

std::string phase_space_wigner_csv(const RunConfig& cfg, const PhaseSpaceResult& r) {
  std::ostringstream os;
  os << provenance_comment(cfg);
  os << "# convention = " << r.grid.convention << "\n";
  os << "# cutoff = " << r.cutoff << "\n";
  os << "q,p,W\n";
  for (Eigen::Index i = 0; i < r.grid.nq(); ++i) {
    for (Eigen::Index j = 0; j < r.grid.np(); ++j) {
      os << format_double(r.grid.q_at(i)) << "," << format_double(r.grid.p_at(j))
         << "," << format_double(r.grid.values(i, j)) << "\n";
    }
  }
  return os.str();
}

std::string phase_space_tomogram_csv(const RunConfig& cfg, const PhaseSpaceResult& r) {
  std::ostringstream os;
  os << provenance_comment(cfg);
  os << "# cutoff = " << r.cutoff << "\n";
  for (const auto& e : r.errors) os << "# error = " << e << "\n";
  os << "f,g,q,R_fock,R_radon,R_printed,fock_radon_abs,printed_fock_abs,"
        "printed_fock_rel\n";
  for (const auto& audit : r.audits) {
    for (const auto& row : audit.rows) {
      os << format_double(audit.frame_f) << "," << format_double(audit.frame_g)
         << "," << format_double(row.q) << "," << format_double(row.fock) << ","
         << format_double(row.radon) << "," << format_double(row.printed) << ","
         << format_double(row.fock_radon_abs) << ","
         << format_double(row.printed_fock_abs) << ","
         << format_double(row.printed_fock_rel) << "\n";
    }
  }
  return os.str();
}

std::string phase_space_json(const RunConfig& cfg, const PhaseSpaceResult& r) {
  nlohmann::ordered_json j;
  j["config"] = provenance_json(cfg);
  nlohmann::ordered_json meta;
  meta["convention"] = r.grid.convention;
  meta["cutoff"] = r.cutoff;
  meta["converged"] = r.converged;
  meta["qmin"] = r.grid.qmin;
  meta["qmax"] = r.grid.qmax;
  meta["step"] = r.grid.dq;
  meta["errors"] = r.errors;
  j["metadata"] = std::move(meta);

  auto wigner = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < r.grid.nq(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index jj = 0; jj < r.grid.np(); ++jj) {
      row.push_back(r.grid.values(i, jj));
    }
    wigner.push_back(std::move(row));
  }
  j["wigner"] = std::move(wigner);

  auto audits = nlohmann::ordered_json::array();
  for (const auto& audit : r.audits) {
    nlohmann::ordered_json a;
    a["f"] = audit.frame_f;
    a["g"] = audit.frame_g;
    a["fock_norm"] = audit.fock_norm;
    a["radon_norm"] = audit.radon_norm;
    a["printed_norm"] = audit.printed_norm;
    a["max_fock_radon_abs"] = audit.max_fock_radon_abs;
    a["max_printed_fock_abs"] = audit.max_printed_fock_abs;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : audit.rows) {
      nlohmann::ordered_json rr;
      rr["q"] = row.q;
      rr["R_fock"] = row.fock;
      rr["R_radon"] = row.radon;
      rr["R_printed"] = row.printed;
      rr["fock_radon_abs"] = row.fock_radon_abs;
      rr["printed_fock_abs"] = row.printed_fock_abs;
      rr["printed_fock_rel"] = row.printed_fock_rel;
      rows.push_back(std::move(rr));
    }
    a["rows"] = std::move(rows);
    audits.push_back(std::move(a));
  }
  j["tomograms"] = std::move(audits);
  return j.dump(2) + "\n";
}

StateResult run_state(const RunConfig& cfg) {
  StateResult out;
  out.params = cfg.model(cfg.betas.front());
  out.params.validate();
  out.route = cfg.state_route;
  out.cutoff = resolve_cutoff(cfg, out.params, out.converged);

  if (cfg.state_route == "eq28") {
    out.state = generalized_thermo_state(out.params, out.cutoff, cfg.tol);
  } else if (cfg.state_route == "spectral") {
    out.state = spectral_thermo_state(out.params, out.cutoff, cfg.tol);
  } else if (cfg.state_route == "a9") {
    out.state = appendix_state(out.params, out.cutoff, AppendixRoute::UnitaryA9,
                               cfg.tol);
  } else if (cfg.state_route == "a10") {
    out.state = appendix_state(out.params, out.cutoff,
                               AppendixRoute::ClosedFormA10, cfg.tol);
  } else if (cfg.state_route == "free") {
    out.state = thermo_vacuum_free(out.params, out.cutoff);
  } else {
    throw ConfigError("unknown state route " + cfg.state_route);
  }
  out.rho = reduced_density(out.state);
  return out;
}

std::string state_csv(const RunConfig& cfg, const StateResult& r) {
  std::ostringstream os;
  os << provenance_comment(cfg);
  os << "# route = " << r.route << "\n";
  os << "# cutoff = " << r.cutoff << "\n";
  os << "# tail_mass = " << format_double(r.state.tail_mass) << "\n";
  os << "# renorm_deviation = " << format_double(r.state.renorm_deviation) << "\n";
  os << "table,m,n,re,im\n";
  const auto& c = r.state.amplitudes;
  for (Eigen::Index m = 0; m < c.rows(); ++m) {
    for (Eigen::Index n = 0; n < c.cols(); ++n) {
      if (c(m, n) == Complex(0)) continue;
      os << "amplitude," << m << "," << n << "," << format_double(c(m, n).real())
         << "," << format_double(c(m, n).imag()) << "\n";
    }
  }
  const auto& rho = r.rho.matrix;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (rho(i, j) == Complex(0)) continue;
      os << "rho," << i << "," << j << "," << format_double(rho(i, j).real())
         << "," << format_double(rho(i, j).imag()) << "\n";
    }
  }
  return os.str();
}

std::string state_json(const RunConfig& cfg, const StateResult& r) {
  nlohmann::ordered_json j;
  j["config"] = provenance_json(cfg);
  nlohmann::ordered_json meta;
  meta["route"] = r.route;
  meta["cutoff"] = r.cutoff;
  meta["converged"] = r.converged;
  meta["tail_mass"] = r.state.tail_mass;
  meta["renorm_deviation"] = r.state.renorm_deviation;
  j["metadata"] = std::move(meta);
  auto amp = nlohmann::ordered_json::array();
  const auto& c = r.state.amplitudes;
  for (Eigen::Index m = 0; m < c.rows(); ++m) {
    for (Eigen::Index n = 0; n < c.cols(); ++n) {
      if (c(m, n) == Complex(0)) continue;
      amp.push_back({m, n, c(m, n).real(), c(m, n).imag()});
    }
  }
  j["amplitudes"] = std::move(amp);
  auto rr = nlohmann::ordered_json::array();
  const auto& rho = r.rho.matrix;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index jj = 0; jj < rho.cols(); ++jj) {
      if (rho(i, jj) == Complex(0)) continue;
      rr.push_back({i, jj, rho(i, jj).real(), rho(i, jj).imag()});
    }
  }
  j["reduced_density"] = std::move(rr);
  return j.dump(2) + "\n";
}

void write_output(const RunConfig& cfg, const std::string& payload,
                  const std::string& suffix) {
  if (cfg.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::string path = cfg.out_path;
  if (!suffix.empty()) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) {
      path += "." + suffix;
    } else {
      path.insert(dot, "." + suffix);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << payload;
}

}  // namespace tfd
