#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chartnav/harness.h"

namespace py = pybind11;
using nlohmann::json;

namespace chartnav {
namespace {

// Everything structured crosses the boundary as JSON text in the same shapes
// the trace and transcript files use; the Python package decodes it.

struct PyEngine {
  std::shared_ptr<const Engine> engine;
  std::string config_hash;
};

PyEngine LoadEngine(const std::string& config_path) {
  const SessionConfig cfg = LoadSessionConfig(config_path);
  return {BuildEngine(cfg), ConfigHash(cfg)};
}

PyEngine EngineFromJson(const std::string& text, const std::string& base_dir) {
  const SessionConfig cfg = ParseSessionConfig(text, base_dir);
  return {BuildEngine(cfg), ConfigHash(cfg)};
}

std::string Batch(const std::vector<FeedbackEvent>& fb) { return ToJson(fb).dump(); }

std::string StateJson(const Session& s) {
  const InteractionState& st = s.state();
  const SemanticTree& tree = s.engine().tree();
  json j{{"mode", ToString(st.mode)},
         {"container", st.focus.container.value},
         {"focus", st.focus.focus.value},
         {"focus_level", ToString(tree.node(st.focus.focus).level)},
         {"page", st.focus.page},
         {"sonification_on", st.sonification_on},
         {"viewport", {{"x", {st.viewport.x.lo, st.viewport.x.hi}},
                       {"y", {st.viewport.y.lo, st.viewport.y.hi}}}}};
  j["active_series"] = st.active_series ? json(*st.active_series) : json(nullptr);
  json visible = json::array();
  for (bool v : st.filter.visible) visible.push_back(v);
  j["visible_series"] = visible;
  return j.dump();
}

}  // namespace
}  // namespace chartnav

PYBIND11_MODULE(_core, m) {
  using namespace chartnav;
  m.doc() = "Native core of chartnav";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);
  py::register_exception<TreeError>(m, "TreeError", PyExc_ValueError);

  py::class_<PyEngine>(m, "Engine")
      .def_static("load", &LoadEngine, py::arg("config_path"))
      .def_static("from_json", &EngineFromJson, py::arg("text"), py::arg("base_dir") = ".")
      .def_property_readonly("config_hash", [](const PyEngine& e) { return e.config_hash; })
      .def_property_readonly("point_count",
                             [](const PyEngine& e) { return e.engine->model().points().size(); })
      .def("overview", [](const PyEngine& e) { return e.engine->narrator().NarrateOverview(); })
      .def("describe",
           [](const PyEngine& e, int depth) { return DescribeTree(*e.engine, depth); },
           py::arg("max_depth") = -1)
      .def("replay",
           [](const PyEngine& e, const std::string& trace, bool force) {
             return SerializeTranscript(ReplayTrace(*e.engine, e.config_hash, ParseTrace(trace),
                                                    force));
           },
           py::arg("trace_json"), py::arg("force") = false)
      .def("render_svg",
           [](const PyEngine& e, const std::string& trace) {
             return RenderTraceSvg(*e.engine, ParseTrace(trace));
           },
           py::arg("trace_json"));

  py::class_<Session>(m, "Session")
      .def(py::init([](const PyEngine& e) { return Session(e.engine); }), py::arg("engine"))
      .def("open", [](const Session& s) { return Batch(s.Open()); })
      .def("dispatch",
           [](Session& s, const std::string& event) {
             const InputEvent e = EventFromJson(json::parse(event));
             if (auto problem = e.Problem()) throw FormatError(*problem);
             return Batch(s.Dispatch(e));
           },
           py::arg("event_json"))
      .def("state", &StateJson)
      .def("geometry", [](const Session& s) {
        return ToJson(s.engine().Snapshot(s.state())).dump();
      })
      .def("check_invariants", [](const Session& s) {
        return s.engine().CheckInvariants(s.state());
      });

  m.def("pitch_for_value",
        [](double v, double lo, double hi) { return PitchForValue(v, Interval{lo, hi}); },
        py::arg("value"), py::arg("lo"), py::arg("hi"));
  m.def(
      "scan_update",
      [](const std::vector<std::pair<double, double>>& points, std::pair<double, double> pos,
         const std::vector<std::uint32_t>& previous, std::size_t cover, double min_rad,
         double max_rad) {
        std::vector<ScanTarget> targets;
        for (std::size_t i = 0; i < points.size(); ++i) {
          targets.push_back({PointId{static_cast<std::uint32_t>(i)},
                             ScreenPoint{points[i].first, points[i].second}});
        }
        ScanState state;
        for (std::uint32_t id : previous) state.indices_within_radius.push_back(PointId{id});
        std::sort(state.indices_within_radius.begin(), state.indices_within_radius.end());
        state.radius_cover_distance = cover;
        state.min_rad = min_rad;
        state.max_rad = max_rad;
        const ScanResult r = ScanUpdate(state, {pos.first, pos.second}, targets);
        std::vector<std::uint32_t> hits;
        for (PointId id : r.next.indices_within_radius) hits.push_back(id.value);
        return py::make_tuple(hits, r.haptic_count, r.adjusted_radius);
      },
      py::arg("points"), py::arg("pos"), py::arg("previous") = std::vector<std::uint32_t>{},
      py::arg("cover") = 3, py::arg("min_rad") = 12.0, py::arg("max_rad") = 48.0);
}
