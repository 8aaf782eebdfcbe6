"""Instrument-dashboard synthesis: clocks, speedometers, fuel gauges,
thermometers, and barometers.

Clock hands follow the standard formulas (degrees clockwise from 12):
hour hand = 30 * (hour mod 12) + 0.5 * minute, minute hand = 6 * minute.
Clock readings are stored in 12-hour display form; answers always accept the
24-hour twin as an alternate, because the dial itself cannot distinguish
morning from evening. Inverse-offset questions whose start time falls
between two hour marks accept both flanking numbers.

Each DialSpec also carries its question knobs (offset, exercise_hours) so
questions are a pure function of the spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from random import Random

from .records import QuestionDraft, format_number
from .scene import (
    Canvas, SceneBuilder, SceneGraph, StyleSpec, angle_point, arc, circle, line,
    rect, text,
)
from .seeds import derive_seed

FAMILIES = ("clock", "speedometer", "fuel", "thermometer", "barometer")

# family -> (scale_min, scale_max, major_tick_step)
SCALES: dict[str, tuple[float, float, float]] = {
    "clock": (1.0, 12.0, 1.0),
    "speedometer": (0.0, 240.0, 20.0),
    "fuel": (0.0, 1.0, 0.25),
    "thermometer": (-20.0, 50.0, 10.0),
    "barometer": (950.0, 1050.0, 10.0),
}

# family -> geometry tuple
GEOMETRIES: dict[str, tuple] = {
    "clock": ("circular", 0.0, 360.0),
    "speedometer": ("circular", 225.0, 270.0),
    "fuel": ("circular", 270.0, 180.0),
    "thermometer": ("linear", "vertical", 300.0),
    "barometer": ("linear", "horizontal", 400.0),
}

UNITS: dict[str, str] = {
    "speedometer": "km/h",
    "fuel": "of a full tank",
    "thermometer": "degrees Celsius",
    "barometer": "hPa",
}

_DURATION_PHRASES: dict[float, str] = {
    0.5: "half an hour",
    1.0: "one hour",
    1.5: "one and a half hours",
    2.0: "two hours",
    2.5: "two and a half hours",
    3.0: "three hours",
}


@dataclass(frozen=True)
class DialSpec:
    family: str
    reading: tuple[int, int] | float  # clock: (hour, minute); others: value
    scale: tuple[float, float, float]
    geometry: tuple
    offset: float = 0.0  # hours for clocks, scale units otherwise
    exercise_hours: float = 0.0  # clocks only

    def to_dict(self) -> dict:
        return asdict(self)


def clock_angles(hour: int, minute: int) -> tuple[float, float]:
    """(hour hand, minute hand) in degrees clockwise from 12 o'clock."""
    return (30.0 * (hour % 12) + 0.5 * minute, 6.0 * minute)


def validate_dial_spec(spec: DialSpec) -> None:
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown dial family {spec.family!r}")
    if spec.family == "clock":
        hour, minute = spec.reading
        if not (0 <= hour <= 23 and 0 <= minute <= 59):
            raise ValueError(f"clock reading {spec.reading} out of range")
    else:
        lo, hi, _ = spec.scale
        if not (lo <= float(spec.reading) <= hi):
            raise ValueError(f"reading {spec.reading} outside scale [{lo}, {hi}]")


def sample_dial_spec(seed: int, family: str | None = None) -> DialSpec:
    """Sample a valid DialSpec; clock minutes restricted to multiples of 5."""
    rng = Random(derive_seed(seed, "dial"))
    family = family or rng.choice(FAMILIES)
    scale = SCALES[family]
    geometry = GEOMETRIES[family]
    if family == "clock":
        reading = (rng.randint(1, 12), 5 * rng.randint(0, 11))
        offset = float(rng.randint(1, 12))
        exercise = rng.choice(sorted(_DURATION_PHRASES))
        return DialSpec(family, reading, scale, geometry, offset, exercise)
    lo, hi, step = scale
    if family == "fuel":
        reading = rng.randint(0, 8) / 8.0
        delta = rng.randint(1, 3) / 8.0
    elif family == "speedometer":
        reading = float(5 * rng.randint(2, 44))
        delta = float(5 * rng.randint(2, 8))
    elif family == "thermometer":
        reading = float(rng.randint(-15, 45))
        delta = float(rng.randint(3, 15))
    else:  # barometer
        reading = float(rng.randint(955, 1045))
        delta = float(rng.randint(5, 25))
    if rng.random() < 0.5:
        delta = -delta
    if not (lo <= reading + delta <= hi):
        delta = -delta
    spec = DialSpec(family, reading, scale, geometry, delta)
    validate_dial_spec(spec)
    return spec


# ---------------------------------------------------------------------------
# Scenes

_FACE_STYLE = StyleSpec(stroke="black", stroke_width=2.5)
_TICK_STYLE = StyleSpec(stroke="black", stroke_width=1.5)
_HOUR_STYLE = StyleSpec(stroke="black", stroke_width=5.0)
_MINUTE_STYLE = StyleSpec(stroke="black", stroke_width=3.0)
_NEEDLE_STYLE = StyleSpec(stroke="red", stroke_width=3.0)


def _needle_angle(spec: DialSpec) -> float:
    _, start, sweep = spec.geometry
    lo, hi, _ = spec.scale
    frac = (float(spec.reading) - lo) / (hi - lo)
    return start + frac * sweep


def _build_clock(b: SceneBuilder, spec: DialSpec, font: float) -> None:
    cx = cy = 200.0
    radius = 150.0
    b.add(circle(cx, cy, radius, StyleSpec(stroke="black", stroke_width=3.0, fill="yellow")),
          "face")
    for n in range(1, 13):
        deg = 30.0 * n
        x1, y1 = angle_point(cx, cy, radius - 8, deg)
        x2, y2 = angle_point(cx, cy, radius, deg)
        b.add(line(x1, y1, x2, y2, _TICK_STYLE, z=1), "ticks")
        nx, ny = angle_point(cx, cy, radius - 26, deg)
        b.add(text(nx, ny - font / 2.0, str(n), StyleSpec(font_size=font), anchor="middle", z=2),
              "numbers")
    hour, minute = spec.reading
    hour_deg, minute_deg = clock_angles(hour, minute)
    hx, hy = angle_point(cx, cy, radius * 0.52, hour_deg)
    b.add(line(cx, cy, hx, hy, _HOUR_STYLE, z=3), "hour_hand")
    mx, my = angle_point(cx, cy, radius * 0.82, minute_deg)
    b.add(line(cx, cy, mx, my, _MINUTE_STYLE, z=3), "minute_hand")
    b.add(circle(cx, cy, 5, StyleSpec(fill="black"), z=4), "hub")


def _build_circular_gauge(b: SceneBuilder, spec: DialSpec, font: float) -> None:
    cx, cy = 200.0, 190.0
    radius = 120.0
    _, start, sweep = spec.geometry
    lo, hi, step = spec.scale
    b.add(arc(cx, cy, radius, start, sweep, _FACE_STYLE), "face")
    n_ticks = int(round((hi - lo) / step))
    for i in range(n_ticks + 1):
        v = lo + i * step
        deg = start + (v - lo) / (hi - lo) * sweep
        x1, y1 = angle_point(cx, cy, radius - 10, deg)
        x2, y2 = angle_point(cx, cy, radius, deg)
        b.add(line(x1, y1, x2, y2, _TICK_STYLE, z=1), "ticks")
        lx, ly = angle_point(cx, cy, radius + 14, deg)
        b.add(text(lx, ly - font / 2.0, format_number(v),
                   StyleSpec(font_size=font), anchor="middle", z=2), "tick_labels")
    nx, ny = angle_point(cx, cy, radius * 0.85, _needle_angle(spec))
    b.add(line(cx, cy, nx, ny, _NEEDLE_STYLE, z=3), "needle")
    b.add(circle(cx, cy, 5, StyleSpec(fill="black"), z=4), "hub")


def _build_thermometer(b: SceneBuilder, spec: DialSpec, font: float) -> None:
    lo, hi, step = spec.scale
    length = spec.geometry[2]
    x = 130.0
    y_bottom = 40.0 + length
    b.add(rect(x - 9, 40.0, 18, length, StyleSpec(stroke="black", stroke_width=2.0)), "tube")
    b.add(circle(x, y_bottom + 20, 20, StyleSpec(stroke="black", stroke_width=2.0, fill="red"),
                 z=1), "bulb")
    level = (float(spec.reading) - lo) / (hi - lo) * length
    b.add(rect(x - 5, y_bottom - level, 10, level + 12, StyleSpec(fill="red"), z=2), "mercury")
    n_ticks = int(round((hi - lo) / step))
    for i in range(n_ticks + 1):
        v = lo + i * step
        y = y_bottom - (v - lo) / (hi - lo) * length
        b.add(line(x - 16, y, x - 9, y, _TICK_STYLE), "ticks")
        b.add(text(x - 20, y - font / 2.0, format_number(v),
                   StyleSpec(font_size=font), anchor="end"), "tick_labels")


def _build_barometer(b: SceneBuilder, spec: DialSpec, font: float) -> None:
    lo, hi, step = spec.scale
    length = spec.geometry[2]
    x0, y0 = 50.0, 70.0
    b.add(rect(x0, y0, length, 26, StyleSpec(stroke="black", stroke_width=2.0)), "tube")
    fill_w = (float(spec.reading) - lo) / (hi - lo) * length
    if fill_w > 0:
        b.add(rect(x0, y0, fill_w, 26, StyleSpec(fill="cyan"), z=1), "mercury")
    n_ticks = int(round((hi - lo) / step))
    for i in range(n_ticks + 1):
        v = lo + i * step
        x = x0 + (v - lo) / (hi - lo) * length
        b.add(line(x, y0 + 26, x, y0 + 34, _TICK_STYLE, z=2), "ticks")
        b.add(text(x, y0 + 38, format_number(v), StyleSpec(font_size=font), anchor="middle",
                   z=2), "tick_labels")


_CANVASES: dict[str, Canvas] = {
    "clock": Canvas(400, 400, (245, 245, 245)),
    "speedometer": Canvas(400, 340, (245, 245, 245)),
    "fuel": Canvas(400, 340, (245, 245, 245)),
    "thermometer": Canvas(260, 440, (245, 245, 245)),
    "barometer": Canvas(500, 180, (245, 245, 245)),
}


def build_dial_scene(spec: DialSpec, font_scale: float = 1.0) -> SceneGraph:
    validate_dial_spec(spec)
    b = SceneBuilder(_CANVASES[spec.family])
    font = (16.0 if spec.family == "clock" else 10.0) * font_scale
    if spec.family == "clock":
        _build_clock(b, spec, font)
    elif spec.family in ("speedometer", "fuel"):
        _build_circular_gauge(b, spec, font)
    elif spec.family == "thermometer":
        _build_thermometer(b, spec, font)
    else:
        _build_barometer(b, spec, font)
    return b.build()


# ---------------------------------------------------------------------------
# Decoding (round-trip checks used by verification and tests)


def _line_angle(prim) -> float:
    x1, y1, x2, y2 = prim.geometry
    return math.degrees(math.atan2(x2 - x1, y1 - y2)) % 360.0


def decode_clock_scene(scene: SceneGraph) -> tuple[int, int]:
    """Recover (hour, minute) in 12-hour form from the hand angles."""
    hour_hand = scene.primitives[scene.labels["hour_hand"][0]]
    minute_hand = scene.primitives[scene.labels["minute_hand"][0]]
    minute = round(_line_angle(minute_hand) / 6.0) % 60
    hour = round((_line_angle(hour_hand) - 0.5 * minute) / 30.0) % 12
    return (12 if hour == 0 else hour, minute)


def decode_gauge_scene(scene: SceneGraph, spec: DialSpec) -> float:
    """Recover the reading of a non-clock dial from its needle or column."""
    lo, hi, _ = spec.scale
    if spec.geometry[0] == "circular":
        needle = scene.primitives[scene.labels["needle"][0]]
        _, start, sweep = spec.geometry
        frac = ((_line_angle(needle) - start) % 360.0) / sweep
        return lo + frac * (hi - lo)
    length = spec.geometry[2]
    mercury = scene.primitives[scene.labels["mercury"][0]]
    if spec.geometry[1] == "vertical":
        extent = mercury.geometry[3] - 12.0
    else:
        extent = mercury.geometry[2]
    return lo + extent / length * (hi - lo)


# ---------------------------------------------------------------------------
# Questions


def format_clock(hour: int, minute: int) -> str:
    return f"{hour}:{minute:02d}"


def _clock_reading_draft(hour: int, minute: int) -> QuestionDraft:
    twin = (hour + 12) % 24
    display = format_clock(hour, minute)
    alternate = format_clock(12 if twin == 0 else twin, minute)
    return QuestionDraft("What time is shown on the dial?", display,
                         "phrase", "reading", alternates=(alternate,))


def _clock_offset_draft(hour: int, minute: int, offset: int) -> QuestionDraft:
    t1 = (hour + offset) % 24
    t2 = (hour + 12 + offset) % 24
    d1 = t1 % 12 or 12
    forms = []
    for h in (t1, t2, d1):
        form = format_clock(h, minute)
        if form not in forms:
            forms.append(form)
    question = (
        "When I left home, the clock showed the time indicated in the figure. "
        f"What time is it after {offset} hours of work?"
    )
    rationale = (
        f"I see that the clock shows the time as {format_clock(hour, minute)}. "
        f"After working for {offset} hours, the time should be {forms[0]}."
    )
    return QuestionDraft(question, forms[0], "phrase", "offset_math",
                         alternates=tuple(forms[1:]), rationale=rationale)


def _clock_inverse_draft(hour: int, minute: int, exercise_hours: float) -> QuestionDraft:
    duration = _DURATION_PHRASES[exercise_hours]
    total = (hour * 60 + minute - round(exercise_hours * 60)) % (12 * 60)
    start_hour = total // 60
    start_minute = total % 60
    pointed = 12 if start_hour == 0 else start_hour
    question = (
        f"I exercised for {duration}. After finishing, the clock showed the time "
        "as illustrated. What number did the hour hand point to when I started "
        "my workout?"
    )
    if start_minute == 0:
        answer, alternates = str(pointed), ()
    else:
        nxt = start_hour + 1
        nxt = 12 if nxt % 12 == 0 else nxt % 12
        answer, alternates = str(pointed), (str(nxt),)
    rationale = (
        f"I read the time from the clock as {format_clock(hour, minute)}, and the workout "
        f"took {duration}. That means I started at {format_clock(12 if start_hour == 0 else start_hour, start_minute)}, "
        f"so the hour hand pointed between {pointed} and {12 if (pointed + 1) % 12 == 0 else (pointed + 1) % 12}."
        if start_minute else
        f"I read the time from the clock as {format_clock(hour, minute)}, and the workout "
        f"took {duration}. That means I started exactly at {pointed} o'clock."
    )
    return QuestionDraft(question, answer, "numeric", "inverse_reasoning",
                         alternates=alternates, rationale=rationale)


def dial_questions(spec: DialSpec) -> list[QuestionDraft]:
    """Reading question for every family; clocks add the offset-arithmetic
    and inverse-offset questions; other dials add an identification question
    and a scale-offset question."""
    validate_dial_spec(spec)
    if spec.family == "clock":
        hour, minute = spec.reading
        hour12 = hour % 12 or 12
        return [
            _clock_reading_draft(hour12, minute),
            _clock_offset_draft(hour12, minute, int(spec.offset)),
            _clock_inverse_draft(hour12, minute, spec.exercise_hours),
        ]
    unit = UNITS[spec.family]
    reading = float(spec.reading)
    reading_q = {
        "speedometer": "What speed does the speedometer show, in km/h?",
        "fuel": "What fraction of a full tank does the fuel gauge show?",
        "thermometer": "What temperature does the thermometer show, in degrees Celsius?",
        "barometer": "What pressure does the barometer show, in hPa?",
    }[spec.family]
    drafts = [
        QuestionDraft(reading_q, format_number(reading), "numeric", "reading"),
        QuestionDraft(
            "Which instrument is shown in this image?", spec.family, "phrase", "instrument"),
    ]
    direction = "increases" if spec.offset >= 0 else "decreases"
    magnitude = abs(spec.offset)
    result = reading + spec.offset
    question = (
        f"If the reading {direction} by {format_number(magnitude)} {unit}, "
        "what will the instrument read?"
    )
    rationale = (
        f"The {spec.family} currently reads {format_number(reading)}. "
        f"{format_number(reading)} {'+' if spec.offset >= 0 else '-'} "
        f"{format_number(magnitude)} = {format_number(result)}."
    )
    drafts.append(QuestionDraft(question, format_number(result), "numeric",
                                "offset_math", rationale=rationale))
    return drafts


from .records import register_generator

register_generator("gauge-gen", dial_questions)
