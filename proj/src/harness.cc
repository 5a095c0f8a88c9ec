#include "chartnav/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace chartnav {

using nlohmann::json;

namespace {

// Strict reader over one JSON object: every key read is recorded, and
// Finish() rejects whatever was left over.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw FormatError(where_ + " must be an object");
  }

  const json* Find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& Require(const std::string& key) {
    const json* v = Find(key);
    if (!v) throw FormatError(where_ + ": missing '" + key + "'");
    return *v;
  }

  void String(const std::string& key, std::string& out) {
    if (const json* v = Find(key)) out = AsString(*v, key);
  }
  void Double(const std::string& key, double& out) {
    if (const json* v = Find(key)) out = AsDouble(*v, key);
  }
  template <typename Int>
  void Integer(const std::string& key, Int& out) {
    if (const json* v = Find(key)) out = AsInteger<Int>(*v, key);
  }

  std::string AsString(const json& v, const std::string& key) const {
    if (!v.is_string()) throw FormatError(where_ + ": '" + key + "' must be a string");
    return v.get<std::string>();
  }
  double AsDouble(const json& v, const std::string& key) const {
    if (!v.is_number()) throw FormatError(where_ + ": '" + key + "' must be a number");
    return v.get<double>();
  }
  template <typename Int>
  Int AsInteger(const json& v, const std::string& key) const {
    if (!v.is_number_integer()) throw FormatError(where_ + ": '" + key + "' must be an integer");
    const auto raw = v.get<std::int64_t>();
    if (raw < 0 && !std::is_signed_v<Int>) {
      throw FormatError(where_ + ": '" + key + "' must not be negative");
    }
    return static_cast<Int>(raw);
  }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw FormatError(where_ + ": unknown key '" + key + "'");
    }
  }

  const std::string& where() const { return where_; }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json ParseJson(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

void CheckVersion(ObjectReader& r) {
  const int version = r.AsInteger<int>(r.Require("format_version"), "format_version");
  if (version != kFormatVersion) {
    throw FormatError(r.where() + ": unsupported format_version " + std::to_string(version));
  }
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json PointJson(ScreenPoint p) { return json::array({p.x, p.y}); }

}  // namespace

// ---------------------------------------------------------------------------
// Session config

std::filesystem::path SessionConfig::ResolvedCsvPath() const {
  const std::filesystem::path p(csv_path);
  return p.is_absolute() ? p : base_dir / p;
}

SessionConfig ParseSessionConfig(std::string_view text, const std::filesystem::path& base_dir) {
  const json doc = ParseJson(text, "config");
  ObjectReader r(doc, "config");
  CheckVersion(r);

  SessionConfig cfg;
  cfg.base_dir = base_dir;
  cfg.csv_path = r.AsString(r.Require("csv_path"), "csv_path");

  {
    ObjectReader c(r.Require("chart"), "config.chart");
    cfg.chart.kind = ParseChartKind(c.AsString(c.Require("kind"), "kind"));
    c.String("title", cfg.chart.title);
    c.String("x_label", cfg.chart.x_label);
    c.String("y_label", cfg.chart.y_label);
    if (const json* v = c.Find("x_kind")) cfg.chart.x_kind = ParseXKind(c.AsString(*v, "x_kind"));
    const json& series = c.Require("series");
    if (!series.is_array()) throw FormatError("config.chart: 'series' must be an array");
    for (const json& s : series) cfg.chart.series_names.push_back(c.AsString(s, "series"));
    c.String("x_column", cfg.chart.x_column);
    c.String("y_column", cfg.chart.y_column);
    c.String("series_column", cfg.chart.series_column);
    c.Finish();
  }
  if (const json* g = r.Find("grid")) {
    ObjectReader gr(*g, "config.grid");
    GridConfig grid;
    gr.Integer("x_bins", grid.x_bins);
    gr.Integer("y_cells_per_bin", grid.y_cells_per_bin);
    gr.Finish();
    cfg.engine.grid = grid;
  }
  if (const json* s = r.Find("screen")) {
    ObjectReader sr(*s, "config.screen");
    sr.Integer("width", cfg.engine.screen.width);
    sr.Integer("height", cfg.engine.screen.height);
    sr.Finish();
  }
  r.Integer("min_touch_px", cfg.engine.min_touch_px);
  if (const json* d = r.Find("dtm")) {
    ObjectReader dr(*d, "config.dtm");
    DtmConfig& dtm = cfg.engine.dtm;
    dr.Integer("radius_cover_distance", dtm.radius_cover_distance);
    dr.Double("min_rad_px", dtm.min_rad_px);
    dr.Double("max_rad_px", dtm.max_rad_px);
    dr.Double("hit_tolerance_px", dtm.hit_tolerance_px);
    dr.Integer("min_interval_ms", dtm.min_interval_ms);
    dr.Double("step_low_hz", dtm.step_low_hz);
    dr.Double("step_high_hz", dtm.step_high_hz);
    dr.Double("step_note_ms", dtm.step_note_ms);
    dr.Finish();
  }
  if (const json* s = r.Find("sonification")) {
    ObjectReader sr(*s, "config.sonification");
    SonificationConfig& sound = cfg.engine.sound;
    sr.Double("pitch_lo_hz", sound.pitch_lo_hz);
    sr.Double("pitch_hi_hz", sound.pitch_hi_hz);
    sr.Double("duration_lo_ms", sound.duration_lo_ms);
    sr.Double("duration_hi_ms", sound.duration_hi_ms);
    sr.Double("default_duration_ms", sound.default_duration_ms);
    sr.Double("sequence_gap_ms", sound.sequence_gap_ms);
    sr.Double("numb_pitch_hz", sound.numb_pitch_hz);
    sr.Double("numb_duration_ms", sound.numb_duration_ms);
    sr.Finish();
  }
  r.Finish();

  try {
    cfg.chart.Validate();
    cfg.engine.Validate();
  } catch (const std::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return cfg;
}

SessionConfig LoadSessionConfig(const std::filesystem::path& path) {
  return ParseSessionConfig(ReadFile(path), path.parent_path());
}

json ToJson(const SessionConfig& c) {
  json chart = {
      {"kind", ToString(c.chart.kind)},
      {"title", c.chart.title},
      {"x_label", c.chart.x_label},
      {"y_label", c.chart.y_label},
      {"x_kind", ToString(c.chart.x_kind)},
      {"series", c.chart.series_names},
      {"x_column", c.chart.x_column},
      {"y_column", c.chart.y_column},
      {"series_column", c.chart.series_column},
  };
  const DtmConfig& d = c.engine.dtm;
  const SonificationConfig& s = c.engine.sound;
  json j = {
      {"format_version", kFormatVersion},
      {"csv_path", c.csv_path},
      {"chart", chart},
      {"screen", {{"width", c.engine.screen.width}, {"height", c.engine.screen.height}}},
      {"min_touch_px", c.engine.min_touch_px},
      {"dtm",
       {{"radius_cover_distance", d.radius_cover_distance},
        {"min_rad_px", d.min_rad_px},
        {"max_rad_px", d.max_rad_px},
        {"hit_tolerance_px", d.hit_tolerance_px},
        {"min_interval_ms", d.min_interval_ms},
        {"step_low_hz", d.step_low_hz},
        {"step_high_hz", d.step_high_hz},
        {"step_note_ms", d.step_note_ms}}},
      {"sonification",
       {{"pitch_lo_hz", s.pitch_lo_hz},
        {"pitch_hi_hz", s.pitch_hi_hz},
        {"duration_lo_ms", s.duration_lo_ms},
        {"duration_hi_ms", s.duration_hi_ms},
        {"default_duration_ms", s.default_duration_ms},
        {"sequence_gap_ms", s.sequence_gap_ms},
        {"numb_pitch_hz", s.numb_pitch_hz},
        {"numb_duration_ms", s.numb_duration_ms}}},
  };
  // The grid default depends on the data, so an unset grid stays unset.
  if (c.engine.grid) {
    j["grid"] = {{"x_bins", c.engine.grid->x_bins},
                 {"y_cells_per_bin", c.engine.grid->y_cells_per_bin}};
  }
  return j;
}

std::string ConfigHash(const SessionConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(Fnv1a64(ToJson(config).dump())));
  return buf;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ChartModel LoadModel(const SessionConfig& config) {
  const std::filesystem::path csv = config.ResolvedCsvPath();
  const std::string text = ReadFile(csv);
  try {
    return ParseDataset(text, config.chart);
  } catch (const DatasetError& e) {
    throw DatasetError(csv.string() + ": " + e.what());
  }
}

std::shared_ptr<const Engine> BuildEngine(const SessionConfig& config) {
  return Engine::Create(LoadModel(config), config.engine);
}

// ---------------------------------------------------------------------------
// Events and feedback

json ToJson(const InputEvent& e) {
  json j = {{"t", e.time_ms}, {"kind", ToString(e.kind)}};
  if (e.position) j["pos"] = PointJson(*e.position);
  if (e.direction != Direction::kNone) j["dir"] = ToString(e.direction);
  if (e.kind == EventKind::kRotorRotate) j["rotation"] = ToString(e.rotation);
  if (e.kind == EventKind::kPinch) j["scale"] = e.scale;
  return j;
}

InputEvent EventFromJson(const json& j) {
  ObjectReader r(j, "event");
  InputEvent e;
  const std::string kind = r.AsString(r.Require("kind"), "kind");
  const auto parsed = ParseEventKind(kind);
  if (!parsed) throw FormatError("event: unknown kind '" + kind + "'");
  e.kind = *parsed;
  e.time_ms = r.AsInteger<std::int64_t>(r.Require("t"), "t");
  if (const json* p = r.Find("pos")) {
    if (!p->is_array() || p->size() != 2 || !(*p)[0].is_number() || !(*p)[1].is_number()) {
      throw FormatError("event: 'pos' must be [x, y]");
    }
    e.position = ScreenPoint{(*p)[0].get<double>(), (*p)[1].get<double>()};
  }
  if (const json* d = r.Find("dir")) {
    const std::string text = r.AsString(*d, "dir");
    const auto dir = ParseDirection(text);
    if (!dir) throw FormatError("event: unknown direction '" + text + "'");
    e.direction = *dir;
  }
  if (const json* rot = r.Find("rotation")) {
    const std::string text = r.AsString(*rot, "rotation");
    const auto parsed_rot = ParseRotation(text);
    if (!parsed_rot) throw FormatError("event: unknown rotation '" + text + "'");
    e.rotation = *parsed_rot;
  }
  r.Double("scale", e.scale);
  r.Finish();
  if (auto problem = e.Problem()) throw FormatError("event: " + *problem);
  return e;
}

json ToJson(const ToneSpec& t) {
  return {{"pitch_hz", t.pitch_hz},
          {"duration_ms", t.duration_ms},
          {"timbre", t.timbre.ToString()},
          {"gap_after_ms", t.gap_after_ms}};
}

ToneSpec ToneFromJson(const json& j) {
  ObjectReader r(j, "tone");
  ToneSpec t;
  t.pitch_hz = r.AsDouble(r.Require("pitch_hz"), "pitch_hz");
  t.duration_ms = r.AsDouble(r.Require("duration_ms"), "duration_ms");
  try {
    t.timbre = Timbre::Parse(r.AsString(r.Require("timbre"), "timbre"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("tone: ") + e.what());
  }
  r.Double("gap_after_ms", t.gap_after_ms);
  r.Finish();
  return t;
}

json ToJson(const FeedbackEvent& f) {
  json j = {{"t", f.time_ms}};
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Speech>) {
          j["speech"] = p.text;
        } else if constexpr (std::is_same_v<P, Tone>) {
          j["tone"] = ToJson(p.tone);
        } else if constexpr (std::is_same_v<P, ToneSequence>) {
          json tones = json::array();
          for (const ToneSpec& t : p.tones) tones.push_back(ToJson(t));
          j["tone_sequence"] = tones;
        } else if constexpr (std::is_same_v<P, Haptic>) {
          j["haptic"] = p.pulses;
        } else if constexpr (std::is_same_v<P, ModeAnnouncement>) {
          j["mode_announcement"] = p.text;
        } else {
          j["earcon"] = ToString(p.earcon);
        }
      },
      f.payload);
  return j;
}

FeedbackEvent FeedbackFromJson(const json& j) {
  if (!j.is_object() || j.size() != 2) {
    throw FormatError("feedback: expected 't' and exactly one payload key");
  }
  ObjectReader r(j, "feedback");
  FeedbackEvent f;
  f.time_ms = r.AsInteger<std::int64_t>(r.Require("t"), "t");
  if (const json* v = r.Find("speech")) {
    f.payload = Speech{r.AsString(*v, "speech")};
  } else if (const json* v = r.Find("tone")) {
    f.payload = Tone{ToneFromJson(*v)};
  } else if (const json* v = r.Find("tone_sequence")) {
    if (!v->is_array()) throw FormatError("feedback: 'tone_sequence' must be an array");
    ToneSequence seq;
    for (const json& t : *v) seq.tones.push_back(ToneFromJson(t));
    f.payload = std::move(seq);
  } else if (const json* v = r.Find("haptic")) {
    f.payload = Haptic{r.AsInteger<int>(*v, "haptic")};
  } else if (const json* v = r.Find("mode_announcement")) {
    f.payload = ModeAnnouncement{r.AsString(*v, "mode_announcement")};
  } else if (const json* v = r.Find("earcon")) {
    const std::string text = r.AsString(*v, "earcon");
    const auto earcon = ParseEarcon(text);
    if (!earcon) throw FormatError("feedback: unknown earcon '" + text + "'");
    f.payload = EarconCue{*earcon};
  }
  r.Finish();
  return f;
}

json ToJson(const std::vector<FeedbackEvent>& batch) {
  json arr = json::array();
  for (const FeedbackEvent& f : batch) arr.push_back(ToJson(f));
  return arr;
}

json ToJson(const Geometry& g) {
  json j = {
      {"mode", ToString(g.mode)},
      {"viewport",
       {{"x", json::array({g.viewport.x.lo, g.viewport.x.hi})},
        {"y", json::array({g.viewport.y.lo, g.viewport.y.hi})}}},
  };
  if (g.mode == Mode::kSnf) {
    json regions = json::array();
    for (const Region& r : g.layout.regions) {
      regions.push_back({{"node", r.node.value},
                         {"rect", json::array({r.rect.left, r.rect.top, r.rect.width,
                                               r.rect.height})}});
    }
    j["page"] = g.layout.page_index;
    j["page_count"] = g.layout.page_count;
    j["regions"] = std::move(regions);
  } else {
    json points = json::array();
    for (const ScanTarget& t : g.points) {
      points.push_back({{"id", t.id.value}, {"pos", PointJson(t.pos)}});
    }
    j["points"] = std::move(points);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Traces

Trace ParseTrace(std::string_view text) {
  const json doc = ParseJson(text, "trace");
  ObjectReader r(doc, "trace");
  CheckVersion(r);
  Trace trace;
  trace.config_hash = r.AsString(r.Require("config_hash"), "config_hash");
  const json& events = r.Require("events");
  if (!events.is_array()) throw FormatError("trace: 'events' must be an array");
  r.Finish();

  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      trace.events.push_back(EventFromJson(events[i]));
    } catch (const FormatError& e) {
      throw FormatError("trace event " + std::to_string(i) + ": " + e.what(),
                        static_cast<long>(i));
    }
    if (i > 0 && trace.events[i].time_ms < trace.events[i - 1].time_ms) {
      throw FormatError("trace event " + std::to_string(i) + ": timestamp goes backwards",
                        static_cast<long>(i));
    }
  }
  return trace;
}

std::string SerializeTrace(const Trace& trace) {
  std::string out = "{\"config_hash\": " + json(trace.config_hash).dump() +
                    ", \"format_version\": " + std::to_string(kFormatVersion) +
                    ", \"events\": [";
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    out += i ? ",\n  " : "\n  ";
    out += ToJson(trace.events[i]).dump();
  }
  out += trace.events.empty() ? "]}\n" : "\n]}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Transcripts

std::string SerializeTranscript(const Transcript& t) {
  std::string out = json{{"config_hash", t.config_hash},
                         {"format_version", kFormatVersion},
                         {"type", "transcript"}}
                        .dump();
  out += '\n';
  for (const TranscriptRecord& rec : t.records) {
    out += json{{"seq", rec.seq}, {"feedback", ToJson(rec.feedback)}}.dump();
    out += '\n';
  }
  return out;
}

Transcript ParseTranscript(std::string_view text) {
  Transcript t;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header = false;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "transcript line " + std::to_string(line_no);
    const json j = ParseJson(line, where);
    ObjectReader r(j, where);
    if (!header) {
      CheckVersion(r);
      if (r.AsString(r.Require("type"), "type") != "transcript") {
        throw FormatError(where + ": not a transcript");
      }
      t.config_hash = r.AsString(r.Require("config_hash"), "config_hash");
      r.Finish();
      header = true;
      continue;
    }
    TranscriptRecord rec;
    rec.seq = r.AsInteger<long>(r.Require("seq"), "seq");
    const json& fb = r.Require("feedback");
    if (!fb.is_array()) throw FormatError(where + ": 'feedback' must be an array");
    for (const json& f : fb) rec.feedback.push_back(FeedbackFromJson(f));
    r.Finish();
    t.records.push_back(std::move(rec));
  }
  if (!header) throw FormatError("transcript: missing header");
  return t;
}

Transcript ReplayTrace(const Engine& engine, const std::string& config_hash, const Trace& trace,
                       bool force) {
  if (!force && trace.config_hash != config_hash) {
    throw FormatError("trace was recorded for config " + trace.config_hash + ", not " +
                      config_hash);
  }
  Transcript out;
  out.config_hash = config_hash;
  out.records.push_back({-1, engine.OpenFeedback()});
  InteractionState state = engine.InitialState();
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const InputEvent& e = trace.events[i];
    if (auto problem = e.Problem()) {
      throw FormatError("trace event " + std::to_string(i) + ": " + *problem,
                        static_cast<long>(i));
    }
    Transition t = engine.Dispatch(std::move(state), e);
    state = std::move(t.state);
    out.records.push_back({static_cast<long>(i), std::move(t.feedback)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

constexpr const char* kSeriesColors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                         "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

// Blue for the first stroke, red for the last.
std::string RampColor(double f) {
  f = std::clamp(f, 0.0, 1.0);
  auto mix = [&](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(33, 178), mix(102, 24), mix(172, 43));
  return buf;
}

}  // namespace

std::string RenderTraceSvg(const Engine& engine, const Trace& trace) {
  const ChartModel& model = engine.model();
  const ScreenSize screen = engine.config().screen;
  const Viewport vp = model.full_viewport();
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << screen.width << "\" height=\""
      << screen.height << "\" viewBox=\"0 0 " << screen.width << ' ' << screen.height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << screen.width << "\" height=\"" << screen.height
      << "\" fill=\"#ffffff\"/>\n";

  svg << "<g class=\"chart\">\n";
  for (std::size_t s = 0; s < model.series_count(); ++s) {
    const char* color = kSeriesColors[s % std::size(kSeriesColors)];
    const auto ids = model.SeriesPoints(s);
    if (model.kind() == ChartKind::kLine) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const DataPoint& p = model.point(ids[i]);
        const ScreenPoint q = DataToScreen({p.x, p.y}, vp, screen);
        svg << (i ? " " : "") << Num(q.x) << ',' << Num(q.y);
      }
      svg << "\"/>\n";
    } else if (model.kind() == ChartKind::kBar) {
      const double half = BarHalfWidth(model, s);
      for (PointId id : ids) {
        const DataPoint& p = model.point(id);
        const double base = std::clamp(0.0, vp.y.lo, vp.y.hi);
        const ScreenPoint a = DataToScreen({p.x - half, std::max(p.y, base)}, vp, screen);
        const ScreenPoint b = DataToScreen({p.x + half, std::min(p.y, base)}, vp, screen);
        svg << "<rect x=\"" << Num(a.x) << "\" y=\"" << Num(a.y) << "\" width=\""
            << Num(b.x - a.x) << "\" height=\"" << Num(b.y - a.y) << "\" fill=\"" << color
            << "\" fill-opacity=\"0.6\"/>\n";
      }
    } else {
      for (PointId id : ids) {
        const DataPoint& p = model.point(id);
        const ScreenPoint q = DataToScreen({p.x, p.y}, vp, screen);
        svg << "<circle cx=\"" << Num(q.x) << "\" cy=\"" << Num(q.y) << "\" r=\"3\" fill=\""
            << color << "\" fill-opacity=\"0.6\"/>\n";
      }
    }
  }
  svg << "</g>\n";

  // A stroke runs from touch_down (or a stray touch_move) to touch_up.
  struct Stroke {
    std::int64_t start_ms;
    std::vector<ScreenPoint> points;
  };
  std::vector<Stroke> strokes;
  bool open = false;
  for (const InputEvent& e : trace.events) {
    if (e.kind == EventKind::kTouchDown || (e.kind == EventKind::kTouchMove && !open)) {
      strokes.push_back({e.time_ms, {}});
      open = true;
    }
    if ((e.kind == EventKind::kTouchDown || e.kind == EventKind::kTouchMove ||
         e.kind == EventKind::kTouchUp) &&
        open && e.position) {
      strokes.back().points.push_back(*e.position);
    }
    if (e.kind == EventKind::kTouchUp) open = false;
  }

  const std::int64_t t0 = trace.events.empty() ? 0 : trace.events.front().time_ms;
  const std::int64_t t1 = trace.events.empty() ? 0 : trace.events.back().time_ms;
  svg << "<g class=\"strokes\" fill=\"none\" stroke-width=\"3\" stroke-linecap=\"round\" "
         "stroke-linejoin=\"round\">\n";
  for (const Stroke& s : strokes) {
    const double f = t1 > t0 ? static_cast<double>(s.start_ms - t0) / (t1 - t0) : 0.0;
    svg << "<path stroke=\"" << RampColor(f) << "\" d=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      svg << (i ? " L" : "M") << Num(s.points[i].x) << ' ' << Num(s.points[i].y);
    }
    if (s.points.size() == 1) svg << " L" << Num(s.points[0].x) << ' ' << Num(s.points[0].y);
    svg << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string DescribeTree(const Engine& engine, int max_depth) {
  const SemanticTree& tree = engine.tree();
  std::string out;
  auto visit = [&](auto&& self, NodeId id, int depth) -> void {
    const SemanticNode& n = tree.node(id);
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += ToString(n.level);
    out += ": ";
    out += engine.narrator().Narrate(id, MoveKind::kNewPosition);
    out += '\n';
    if (max_depth >= 0 && depth >= max_depth) return;
    for (NodeId child : n.children) self(self, child, depth + 1);
  };
  visit(visit, tree.root(), 0);
  return out;
}

}  // namespace chartnav
