#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qaegate/diagnostics.hpp"
#include "qaegate/engine.hpp"
#include "qaegate/sampling.hpp"
#include "qaegate/trainer.hpp"

namespace py = pybind11;
using namespace qaegate;

namespace {

std::vector<double> as_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compression of parametric quantum gate families into fewer-qubit channels";

  // tensor ops
  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def("embed", &embed, py::arg("op"), py::arg("targets"), py::arg("total_qubits"));
  m.def("partial_trace", &partial_trace, py::arg("m"), py::arg("keep"),
        py::arg("total_qubits"));
  m.def(
      "expm_hermitian",
      [](const ComplexMatrix& h, Complex scale) { return expm_hermitian(h, scale); },
      py::arg("h"), py::arg("scale"));
  m.def("sigma_x", [] { return sigma_x(); });
  m.def("sigma_y", [] { return sigma_y(); });
  m.def("sigma_z", [] { return sigma_z(); });

  // gates
  py::enum_<GateKind>(m, "GateKind")
      .value("RX", GateKind::RX)
      .value("RY", GateKind::RY)
      .value("RZ", GateKind::RZ)
      .value("XX", GateKind::XX)
      .value("YY", GateKind::YY)
      .value("ZZ", GateKind::ZZ);
  m.def("primitive_matrix", &primitive_matrix, py::arg("kind"), py::arg("theta"));

  py::class_<GateTemplate>(m, "GateTemplate")
      .def_readonly("num_qubits", &GateTemplate::num_qubits)
      .def_readonly("num_params", &GateTemplate::num_params);
  m.def("two_qubit_template", &two_qubit_template);
  m.def("n_qubit_template", &n_qubit_template, py::arg("n"));
  m.def(
      "realize",
      [](const GateTemplate& t, const std::vector<double>& theta) {
        return realize(t, theta);
      },
      py::arg("template"), py::arg("theta"));

  // channels and Choi operators
  py::class_<KrausChannel>(m, "KrausChannel")
      .def_readonly("in_dim", &KrausChannel::in_dim)
      .def_readonly("out_dim", &KrausChannel::out_dim)
      .def_readonly("kraus", &KrausChannel::kraus)
      .def("completeness_defect", &KrausChannel::completeness_defect)
      .def_static("from_unitary", &KrausChannel::from_unitary);
  py::class_<ChoiOperator>(m, "ChoiOperator")
      .def_readonly("in_dim", &ChoiOperator::in_dim)
      .def_readonly("out_dim", &ChoiOperator::out_dim)
      .def_readonly("matrix", &ChoiOperator::matrix);
  m.def("apply_channel", &apply_channel, py::arg("channel"), py::arg("rho"));
  m.def("choi_of_channel", &choi_of_channel);
  m.def("choi_of_unitary", &choi_of_unitary);
  m.def("choi_overlap", &choi_overlap);
  m.def("entanglement_fidelity", &entanglement_fidelity, py::arg("u"), py::arg("channel"));
  m.def("swap_test_probability", &swap_test_probability);

  // Heisenberg data
  py::class_<HeisenbergFamily>(m, "HeisenbergFamily")
      .def(py::init([](int n, double jx, double jy, double jz, double h) {
             return HeisenbergFamily{n, jx, jy, jz, h};
           }),
           py::arg("n"), py::arg("jx"), py::arg("jy"), py::arg("jz"), py::arg("h"))
      .def_readonly("n", &HeisenbergFamily::n)
      .def_readonly("jx", &HeisenbergFamily::jx)
      .def_readonly("jy", &HeisenbergFamily::jy)
      .def_readonly("jz", &HeisenbergFamily::jz)
      .def_readonly("h", &HeisenbergFamily::h);
  m.def("isotropic_family", &isotropic_family, py::arg("n"));
  m.def("anisotropic_family", &anisotropic_family, py::arg("n"));

  py::class_<GateSample>(m, "GateSample")
      .def(py::init([](const HeisenbergFamily& f, double t) {
             return GateSample{f, t};
           }),
           py::arg("family"), py::arg("t"))
      .def_readonly("family", &GateSample::family)
      .def_readonly("t", &GateSample::t);
  py::class_<Dataset>(m, "Dataset")
      .def_readonly("family", &Dataset::family)
      .def_readonly("seed", &Dataset::seed)
      .def_readonly("train", &Dataset::train)
      .def_readonly("test", &Dataset::test);
  m.def("hamiltonian", &hamiltonian, py::arg("family"));
  m.def("heisenberg_gate", &heisenberg_gate, py::arg("sample"));
  m.def("sample_dataset", &sample_dataset, py::arg("family"), py::arg("n_train"),
        py::arg("n_test"), py::arg("t_lo"), py::arg("t_hi"), py::arg("seed"));
  m.def("save_dataset", &save_dataset, py::arg("dataset"), py::arg("path"),
        py::arg("command_line") = "");
  m.def("load_dataset", &load_dataset, py::arg("path"));

  // scenarios
  py::enum_<ScenarioKind>(m, "ScenarioKind")
      .value("Basic", ScenarioKind::Basic)
      .value("MultiRound", ScenarioKind::MultiRound)
      .value("Sequence", ScenarioKind::Sequence);
  py::class_<ScenarioModel>(m, "ScenarioModel")
      .def_static("basic", &ScenarioModel::basic, py::arg("n"), py::arg("a"))
      .def_static("multi_round", &ScenarioModel::multi_round, py::arg("n"), py::arg("a"),
                  py::arg("rounds"))
      .def_static("sequence", &ScenarioModel::sequence, py::arg("n"), py::arg("a"),
                  py::arg("length") = 2)
      .def_readonly("kind", &ScenarioModel::kind)
      .def_readonly("n", &ScenarioModel::n)
      .def_readonly("a", &ScenarioModel::a)
      .def_readonly("rounds", &ScenarioModel::rounds)
      .def_readonly("length", &ScenarioModel::length)
      .def("num_params", &ScenarioModel::num_params)
      .def("num_blocks", &ScenarioModel::num_blocks)
      .def("block_names", &ScenarioModel::block_names);
  m.def(
      "encoded_channel",
      [](const ScenarioModel& m_, const std::vector<double>& theta,
         const ComplexMatrix& u_x) { return encoded_channel(m_, theta, u_x); },
      py::arg("model"), py::arg("theta"), py::arg("u_x"));
  m.def(
      "decoded_channel",
      [](const ScenarioModel& m_, const std::vector<double>& theta,
         const std::vector<ComplexMatrix>& gates) {
        return decoded_channel(m_, theta, gates);
      },
      py::arg("model"), py::arg("theta"), py::arg("gates"));
  m.def("target_choi", &target_choi, py::arg("model"), py::arg("gates"),
        py::arg("multiround_uses") = 1);
  m.def(
      "loss",
      [](const ScenarioModel& m_, const std::vector<double>& theta,
         const std::vector<ComplexMatrix>& gates) { return loss(m_, theta, gates); },
      py::arg("model"), py::arg("theta"), py::arg("gates"));
  m.def(
      "fidelity",
      [](const ScenarioModel& m_, const std::vector<double>& theta,
         const std::vector<ComplexMatrix>& gates) {
        return CompiledScenario(m_, gates).fidelity(theta);
      },
      py::arg("model"), py::arg("theta"), py::arg("gates"));
  m.def("save_model", &save_model, py::arg("model"), py::arg("theta"), py::arg("path"),
        py::arg("seed"), py::arg("command_line") = "");
  m.def("load_model", &load_model, py::arg("path"));

  // training
  py::enum_<GradientMode>(m, "GradientMode")
      .value("ParameterShift", GradientMode::ParameterShift)
      .value("FiniteDifference", GradientMode::FiniteDifference);
  py::enum_<InitMode>(m, "InitMode")
      .value("Random", InitMode::Random)
      .value("Zero", InitMode::Zero);
  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("max_iters", &TrainConfig::max_iters)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("loss_threshold", &TrainConfig::loss_threshold)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("epoch_size", &TrainConfig::epoch_size)
      .def_readwrite("gradient_mode", &TrainConfig::gradient_mode)
      .def_readwrite("fd_step", &TrainConfig::fd_step)
      .def_readwrite("init", &TrainConfig::init)
      .def_readwrite("threads", &TrainConfig::threads);
  py::class_<EpochRow>(m, "EpochRow")
      .def_readonly("epoch", &EpochRow::epoch)
      .def_readonly("train_overlap", &EpochRow::train_overlap)
      .def_readonly("test_overlap", &EpochRow::test_overlap)
      .def_readonly("grad_norm_sq", &EpochRow::grad_norm_sq)
      .def_readonly("seconds", &EpochRow::seconds);
  py::class_<TrainingRecord>(m, "TrainingRecord")
      .def_readonly("dim_theta", &TrainingRecord::dim_theta)
      .def_readonly("epoch_size", &TrainingRecord::epoch_size)
      .def_readonly("total_iters", &TrainingRecord::total_iters)
      .def_readonly("rows", &TrainingRecord::rows);
  py::class_<TrainResult>(m, "TrainResult")
      .def_property_readonly("theta",
                             [](const TrainResult& r) { return as_vector(r.theta); })
      .def_readonly("record", &TrainResult::record);
  m.def(
      "gradient",
      [](const ScenarioModel& m_, const std::vector<double>& theta,
         const std::vector<ComplexMatrix>& gates, GradientMode mode, double fd_step) {
        return as_vector(gradient(m_, theta, gates, mode, fd_step));
      },
      py::arg("model"), py::arg("theta"), py::arg("gates"),
      py::arg("mode") = GradientMode::ParameterShift, py::arg("fd_step") = 1e-5);
  m.def(
      "train",
      [](const ScenarioModel& m_, const Dataset& ds, const TrainConfig& cfg,
         const Dataset* ds2) { return train(m_, ds, cfg, ds2); },
      py::arg("model"), py::arg("dataset"), py::arg("config") = TrainConfig{},
      py::arg("dataset2") = nullptr, py::call_guard<py::gil_scoped_release>());
  m.def("save_curve_csv", &save_curve_csv, py::arg("record"), py::arg("path"),
        py::arg("include_timing") = false);

  // diagnostics
  py::class_<SmoothnessReport>(m, "SmoothnessReport")
      .def_readonly("samples", &SmoothnessReport::samples)
      .def_readonly("samples_d3", &SmoothnessReport::samples_d3)
      .def_readonly("max_abs_d2", &SmoothnessReport::max_abs_d2)
      .def_readonly("max_abs_d3", &SmoothnessReport::max_abs_d3)
      .def_readonly("bound_d2", &SmoothnessReport::bound_d2)
      .def_readonly("bound_d3", &SmoothnessReport::bound_d3)
      .def_readonly("violations", &SmoothnessReport::violations)
      .def("to_json", &SmoothnessReport::to_json);
  m.def("check_second_order", &check_second_order, py::arg("model"), py::arg("gates"),
        py::arg("trials"), py::arg("seed"), py::arg("trials_d3") = -1,
        py::arg("d2_step") = 1e-3, py::arg("d3_step") = 1e-2,
        py::call_guard<py::gil_scoped_release>());
  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("epsilon", &ConvergenceReport::epsilon)
      .def_readonly("met", &ConvergenceReport::met)
      .def_readonly("first_epoch", &ConvergenceReport::first_epoch)
      .def_readonly("iterations", &ConvergenceReport::iterations)
      .def_readonly("budget", &ConvergenceReport::budget)
      .def_readonly("ratio", &ConvergenceReport::ratio)
      .def_readonly("within_budget", &ConvergenceReport::within_budget)
      .def("to_json", &ConvergenceReport::to_json);
  m.def("convergence_budget", &convergence_budget, py::arg("record"), py::arg("epsilon"));
}
