"""
Results Formatter
=================
Turns solve, table, scan and orbit results into text, CSV or JSON.

Every numeric CSV column names its unit in the header. CSV and JSON output
leave out wall-clock fields (timestamp, seconds) so that a config always
produces the same bytes; the text layout shows them.
"""

import csv
import io
import json
from typing import Dict, List, Any, Optional

from functions.core_model import frequency_mhz_from_mev
from functions.errors import ConfigError
from functions.solve_controller import ChannelReport, OrbitReport, ScanDocument, SolveResults
from functions.table_runner import TableDocument

RULE = "=" * 60
SUBRULE = "-" * 30


def convert_energy(value: Optional[float], units: str, scale_mev: Optional[float]) -> Optional[float]:
    """Reference-unit energy in the requested output unit."""
    if value is None or units == "natural":
        return value
    if scale_mev is None:
        raise ConfigError(f"Units '{units}' need a physical reference mass")
    mev = value * scale_mev
    if units == "MeV":
        return mev
    if units == "MHz":
        return frequency_mhz_from_mev(mev)
    if units == "meV":
        return mev * 1.0e9
    raise ConfigError(f"Unknown output unit '{units}'")


def unit_label(units: str) -> str:
    return "m_ref" if units == "natural" else units


def _num(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.12g}"


def _csv(header: List[str], rows: List[List[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _dump(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, default=str, sort_keys=False) + "\n"


# === SOLVE REPORTS ===

def _channel_rows(channel: ChannelReport, units: str,
                  scale: Optional[float]) -> List[Dict[str, Any]]:
    return [{
        "index": level.index,
        "energy": convert_energy(level.energy, units, scale),
        "lambda": convert_energy(level.lambda_, units, scale),
        "nodes": level.nodes,
        "character": level.character,
        "shift": convert_energy(level.shift, units, scale),
        "total": convert_energy(level.total, units, scale),
        "match_residual": level.match_residual,
    } for level in channel.levels]


def format_solve_report(results: SolveResults, fmt: str = "text", units: str = "natural") -> str:
    if fmt == "json":
        return _dump(_solve_document(results, units))
    if fmt == "csv":
        u = unit_label(units)
        scale = results.metadata.get("scale_mev")
        header = ["channel", "index", f"E [{u}]", f"lambda [{u}]", "nodes", "character",
                  f"breit_shift [{u}]", f"total [{u}]", "match_residual [1]", "error"]
        body: List[List[Any]] = []
        for channel in results.channels:
            if channel.error:
                body.append([channel.label, "", "", "", "", "", "", "", "", channel.error])
            for row in _channel_rows(channel, units, scale):
                body.append([channel.label, row["index"], _num(row["energy"]), _num(row["lambda"]),
                             row["nodes"], row["character"], _num(row["shift"]),
                             _num(row["total"]), _num(row["match_residual"]), ""])
        return _csv(header, body)
    return _solve_text(results, units)


def _solve_document(results: SolveResults, units: str) -> Dict[str, Any]:
    metadata = {k: v for k, v in results.metadata.items() if k != "timestamp"}
    scale = metadata.get("scale_mev")
    channels = []
    for channel in results.channels:
        window = None
        if channel.window is not None:
            window = [convert_energy(w, units, scale) for w in channel.window]
        channels.append({
            "index": channel.index,
            "label": channel.label,
            "window": window,
            "levels": _channel_rows(channel, units, scale),
            "warnings": channel.warnings,
            "evaluations": channel.evaluations,
            "error": channel.error,
        })
    return {"success": results.success, "units": units, "metadata": metadata,
            "channels": channels, "error_message": results.error_message}


def _solve_text(results: SolveResults, units: str) -> str:
    meta = results.metadata
    scale = meta.get("scale_mev")
    u = unit_label(units)
    particles = ", ".join(f"{p.get('name') or 'particle'} m={p['mass']:.12g}"
                          for p in meta.get("particles", []))
    inter = meta.get("interaction", {})
    lines = [
        "🎯 TWO-BODY SPECTRUM",
        RULE,
        f"📁 Config: {meta.get('source') or 'inline'}",
        f"⚛️ Particles: {particles} (m_ref = {scale or 1} {'MeV' if scale else 'natural'})",
        f"🔧 Interaction: alpha={inter.get('alpha')} sigma={inter.get('sigma')} g={inter.get('g')}",
        f"⏱️ Run Time: {meta.get('timestamp', 'Unknown')}",
        "",
    ]
    for channel in results.channels:
        lines.append(f"📋 {channel.label}")
        lines.append(SUBRULE)
        if channel.error:
            lines.append(f"  ❌ {channel.error}")
            lines.append("")
            continue
        if channel.window is not None:
            low, high = (convert_energy(w, units, scale) for w in channel.window)
            lines.append(f"  Window: [{low:.6g}, {high:.6g}] {u}")
        if not channel.levels:
            lines.append("  No levels found")
        for level in channel.levels:
            energy = convert_energy(level.energy, units, scale)
            text = f"  #{level.index}  E = {energy:.12g} {u}  nodes={level.nodes}"
            if level.character:
                text += f"  [{level.character}]"
            if level.shift is not None:
                shift = convert_energy(level.shift, units, scale)
                total = convert_energy(level.total, units, scale)
                text += f"  breit={shift:.6g}  total={total:.12g}"
            lines.append(text)
        for warning in channel.warnings:
            lines.append(f"  ⚠️ {warning}")
        lines.append(f"  ⏱️ {channel.seconds:.2f} s, {channel.evaluations} determinant evaluations")
        lines.append("")
    failed = len(results.failed_channels)
    lines.extend([
        RULE,
        f"📋 Complete - {len(results.channels)} channel(s), {failed} failed",
    ])
    return "\n".join(lines) + "\n"


# === TABLES ===

def table_unit(doc: TableDocument) -> str:
    units = {row.unit for row in doc.rows}
    return units.pop() if len(units) == 1 else "row unit"


def format_table(doc: TableDocument, fmt: str = "text") -> str:
    if fmt == "json":
        return _dump(doc.to_dict())
    u = table_unit(doc)
    if fmt == "csv":
        header = ["row", "unit"]
        for column in doc.columns:
            header += [f"{column} printed [{u}]", f"{column} computed [{u}]",
                       f"{column} deviation [relative]"]
        header.append("error")
        body = []
        for row in doc.rows:
            values: List[Any] = [row.key, row.unit]
            for column in doc.columns:
                values += [_num(row.reference.get(column)), _num(row.computed.get(column)),
                           _num(row.deviation(column))]
            values.append(row.error or "")
            body.append(values)
        return _csv(header, body)

    lines = [f"🎯 {doc.name.upper()}: {doc.title}", RULE]
    for row in doc.rows:
        lines.append(f"📋 {row.key} [{row.unit}]")
        for column in doc.columns:
            deviation = row.deviation(column)
            dev_text = "" if deviation is None else f"  dev={deviation:+.2e}"
            lines.append(f"  {column:<14} printed={_num(row.reference.get(column)):<16} "
                         f"computed={_num(row.computed.get(column))}{dev_text}")
        if row.error:
            lines.append(f"  ❌ {row.error}")
        for note in row.notes:
            lines.append(f"  • {note}")
    for note in doc.notes:
        lines.append(f"💡 {note}")
    lines.extend([RULE, f"📋 Complete - {len(doc.rows)} row(s), {len(doc.failed_rows)} failed, "
                        f"max |deviation| {doc.max_deviation():.2e}"])
    return "\n".join(lines) + "\n"


# === SCANS AND ORBITS ===

def format_scan(doc: ScanDocument, fmt: str = "text", units: str = "natural",
                scale_mev: Optional[float] = None) -> str:
    u = unit_label(units)
    energies = [convert_energy(e, units, scale_mev) for e in doc.energies]
    flips = set(doc.sign_changes)
    if fmt == "json":
        data = doc.to_dict()
        data["energies"] = energies
        data["units"] = units
        return _dump(data)
    if fmt == "csv":
        body = [[_num(e), _num(v), "yes" if i in flips else ""]
                for i, (e, v) in enumerate(zip(energies, doc.values))]
        return _csv([f"E [{u}]", "determinant [1]", "sign_change_to_next"], body)
    lines = [f"🔍 DETERMINANT SCAN: {doc.label}", RULE]
    for i, (e, v) in enumerate(zip(energies, doc.values)):
        marker = "  ⟵ sign change" if i in flips else ""
        lines.append(f"  {_num(e):>20} {u}  {_num(v) or 'failed':>20}{marker}")
    for warning in doc.warnings:
        lines.append(f"  ⚠️ {warning}")
    lines.extend([RULE, f"📋 {len(doc.sign_changes)} sign change(s) on {len(energies)} point(s)"])
    return "\n".join(lines) + "\n"


def format_orbit(report: OrbitReport, fmt: str = "text") -> str:
    if fmt == "json":
        return _dump(report.to_dict())
    if fmt == "csv":
        if report.sample is None:
            return _csv(["parameter", "theta [rad]"], [])
        name = "u [m_ref]" if report.sample.parameter == "u" else "r [1/m_ref]"
        body = [[_num(p), _num(t)] for p, t in zip(report.sample.points, report.sample.theta)]
        return _csv([name, "theta [rad]"], body)
    lines = [
        "🪐 CLASSICAL ORBIT",
        RULE,
        f"📊 Regime: {report.regime.value}",
        f"🔧 lambda={report.lambda_:.12g}  L={report.L:.12g}  alpha={report.alpha:.12g}",
    ]
    if report.turning_radii:
        radii = ", ".join(f"{r:.10g}" for r in report.turning_radii)
        lines.append(f"📍 Turning radii [1/m_ref]: {radii}")
    if report.periapsis_advance is not None:
        lines.append(f"🔄 Periapsis advance per revolution: {report.periapsis_advance:.10g} rad")
    if report.sample is not None:
        lines.append(f"📈 {len(report.sample.points)} samples of theta({report.sample.parameter})")
    for warning in report.warnings:
        lines.append(f"⚠️ {warning}")
    lines.append(RULE)
    return "\n".join(lines) + "\n"


def format_oracle(data: Dict[str, Any], fmt: str = "text") -> str:
    """One oracle evaluation: ``data`` maps names to numbers, ``unit`` names their unit."""
    if fmt == "json":
        return _dump(data)
    values = {k: v for k, v in data.items() if k not in ("kind", "unit")}
    if fmt == "csv":
        return _csv([f"{k} [{data.get('unit', '1')}]" for k in values],
                    [[_num(v) for v in values.values()]])
    lines = [f"🔮 ORACLE: {data.get('kind')}", SUBRULE]
    lines += [f"  {k} = {_num(v)} {data.get('unit', '')}".rstrip() for k, v in values.items()]
    return "\n".join(lines) + "\n"
