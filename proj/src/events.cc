#include "chartnav/events.h"

#include <array>
#include <cmath>
#include <utility>

namespace chartnav {
namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 12> kEventNames = {{
    {EventKind::kTouchDown, "touch_down"},
    {EventKind::kTouchMove, "touch_move"},
    {EventKind::kTouchUp, "touch_up"},
    {EventKind::kSwipe, "swipe"},
    {EventKind::kDoubleTap, "double_tap"},
    {EventKind::kDoubleTapHoldMove, "double_tap_hold_move"},
    {EventKind::kZScrub, "z_scrub"},
    {EventKind::kRotorRotate, "rotor_rotate"},
    {EventKind::kRotorFlick, "rotor_flick"},
    {EventKind::kPinch, "pinch"},
    {EventKind::kSplitTap, "split_tap"},
    {EventKind::kThreeFingerSwipe, "three_finger_swipe"},
}};

constexpr std::array<std::pair<Direction, std::string_view>, 6> kDirectionNames = {{
    {Direction::kNone, "none"},
    {Direction::kLeft, "left"},
    {Direction::kRight, "right"},
    {Direction::kUp, "up"},
    {Direction::kDown, "down"},
    {Direction::kHold, "hold"},
}};

constexpr std::array<std::pair<Earcon, std::string_view>, 3> kEarconNames = {{
    {Earcon::kUnavailable, "unavailable"},
    {Earcon::kPage, "page"},
    {Earcon::kHold, "hold"},
}};

template <typename Enum, std::size_t N>
std::string_view NameOf(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum v) {
  for (const auto& [value, name] : table) {
    if (value == v) return name;
  }
  return table[0].second;
}

template <typename Enum, std::size_t N>
std::optional<Enum> ValueOf(const std::array<std::pair<Enum, std::string_view>, N>& table,
                            std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

bool IsOneOf(Direction d, std::initializer_list<Direction> allowed) {
  for (Direction a : allowed) {
    if (a == d) return true;
  }
  return false;
}

}  // namespace

std::string_view ToString(EventKind kind) { return NameOf(kEventNames, kind); }
std::string_view ToString(Direction direction) { return NameOf(kDirectionNames, direction); }
std::string_view ToString(Rotation rotation) {
  return rotation == Rotation::kClockwise ? "cw" : "ccw";
}
std::string_view ToString(Earcon earcon) { return NameOf(kEarconNames, earcon); }

std::optional<EventKind> ParseEventKind(std::string_view text) {
  return ValueOf(kEventNames, text);
}
std::optional<Direction> ParseDirection(std::string_view text) {
  return ValueOf(kDirectionNames, text);
}
std::optional<Rotation> ParseRotation(std::string_view text) {
  if (text == "cw") return Rotation::kClockwise;
  if (text == "ccw") return Rotation::kCounterClockwise;
  return std::nullopt;
}
std::optional<Earcon> ParseEarcon(std::string_view text) { return ValueOf(kEarconNames, text); }

std::optional<std::string> InputEvent::Problem() const {
  using D = Direction;
  const std::string name(ToString(kind));
  auto need_position = [&]() -> std::optional<std::string> {
    if (!position) return name + " needs a position";
    if (!std::isfinite(position->x) || !std::isfinite(position->y)) {
      return name + " position must be finite";
    }
    return std::nullopt;
  };
  auto need_direction = [&](std::initializer_list<D> allowed) -> std::optional<std::string> {
    if (!IsOneOf(direction, allowed)) {
      return name + " does not accept direction '" + std::string(ToString(direction)) + "'";
    }
    return std::nullopt;
  };
  switch (kind) {
    case EventKind::kTouchDown:
    case EventKind::kTouchMove:
      return need_position();
    case EventKind::kTouchUp:
    case EventKind::kSplitTap:
      if (position && (!std::isfinite(position->x) || !std::isfinite(position->y))) {
        return name + " position must be finite";
      }
      return std::nullopt;
    case EventKind::kSwipe:
      return need_direction({D::kLeft, D::kRight, D::kUp, D::kDown});
    case EventKind::kDoubleTapHoldMove:
      return need_direction({D::kLeft, D::kRight, D::kUp, D::kDown, D::kHold});
    case EventKind::kRotorFlick:
      return need_direction({D::kUp, D::kDown});
    case EventKind::kThreeFingerSwipe:
      return need_direction({D::kLeft, D::kRight});
    case EventKind::kPinch:
      if (!(scale > 0.0) || !std::isfinite(scale)) return name + " scale must be positive";
      return need_position();
    case EventKind::kDoubleTap:
    case EventKind::kZScrub:
    case EventKind::kRotorRotate:
      return std::nullopt;
  }
  return std::nullopt;
}

InputEvent InputEvent::TouchDown(std::int64_t t, ScreenPoint p) {
  return {EventKind::kTouchDown, t, p};
}
InputEvent InputEvent::TouchMove(std::int64_t t, ScreenPoint p) {
  return {EventKind::kTouchMove, t, p};
}
InputEvent InputEvent::TouchUp(std::int64_t t, std::optional<ScreenPoint> p) {
  return {EventKind::kTouchUp, t, p};
}
InputEvent InputEvent::Swipe(std::int64_t t, Direction d) {
  return {EventKind::kSwipe, t, std::nullopt, d};
}
InputEvent InputEvent::DoubleTap(std::int64_t t) { return {EventKind::kDoubleTap, t, std::nullopt}; }
InputEvent InputEvent::DoubleTapHoldMove(std::int64_t t, Direction d) {
  return {EventKind::kDoubleTapHoldMove, t, std::nullopt, d};
}
InputEvent InputEvent::ZScrub(std::int64_t t) { return {EventKind::kZScrub, t, std::nullopt}; }
InputEvent InputEvent::RotorRotate(std::int64_t t, Rotation r) {
  InputEvent e{EventKind::kRotorRotate, t, std::nullopt};
  e.rotation = r;
  return e;
}
InputEvent InputEvent::RotorFlick(std::int64_t t, Direction d) {
  return {EventKind::kRotorFlick, t, std::nullopt, d};
}
InputEvent InputEvent::Pinch(std::int64_t t, double scale, ScreenPoint focus) {
  InputEvent e{EventKind::kPinch, t, focus};
  e.scale = scale;
  return e;
}
InputEvent InputEvent::SplitTap(std::int64_t t, std::optional<ScreenPoint> p) {
  return {EventKind::kSplitTap, t, p};
}
InputEvent InputEvent::ThreeFingerSwipe(std::int64_t t, Direction d) {
  return {EventKind::kThreeFingerSwipe, t, std::nullopt, d};
}

}  // namespace chartnav
