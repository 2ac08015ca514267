"""Analysis reports: every claim travels with a re-checkable object.

A report embeds the game it talks about, so the verifier can re-derive
everything from the report file alone: witnesses are re-tested for
membership, certificates re-checked against the payoffs, pure-NE lists
recomputed, GUE flags re-evaluated.  Rationals are serialized as strings
in lowest terms; round-trips are bit-exact.
"""

from __future__ import annotations

import json
import time
from fractions import Fraction

from . import certify, polytopes, zerosum
from .games import (
    Game,
    GameFormatError,
    JointDistribution,
    MixedAction,
    game_from_dict,
    game_to_dict,
)
from .polytopes import Degenerate2x2Error
from .rational import format_rational, parse_rational

REPORT_VERSION = 1
ALL_CONCEPTS = ("ne", "ce", "cce", "ircp")


class ReportError(ValueError):
    """Malformed report input."""


def _mixed_to_dict(m: MixedAction) -> dict:
    return {"player": m.player,
            "weights": {str(a): format_rational(w) for a, w in sorted(m.weights.items())}}


def _mixed_from_dict(data: dict) -> MixedAction:
    return MixedAction(int(data["player"]),
                       {int(a): parse_rational(w) for a, w in data["weights"].items()})


def _certification_to_dict(game: Game, result) -> dict:
    if isinstance(result, certify.UniquenessCertificate):
        return {"type": "certificate", **certify.certificate_to_dict(result)}
    return {"type": "refutation", **certify.refutation_to_dict(game, result)}


def _classification_to_dict(game: Game, cls: certify.CceClassification) -> dict:
    out: dict = {"variant": cls.variant}
    if cls.point is not None:
        out["point"] = certify.distribution_to_dict(game, cls.point)
    if cls.variant == certify.UNIQUE_PURE:
        out["certificate"] = certify.certificate_to_dict(cls.certificate)
    elif cls.variant == certify.UNIQUE_MIXED_2X2:
        out["mixers"] = list(cls.mixers)
        out["subgame"] = game_to_dict(cls.subgame)
        out["ne"] = [_mixed_to_dict(m) for m in cls.ne]
    else:
        out["witnesses"] = [certify.distribution_to_dict(game, w)
                            for w in cls.witnesses]
    return out


def build_report(game: Game, concepts=ALL_CONCEPTS, check_unique: bool = False) -> dict:
    """Analyze the game and assemble the full machine-readable report."""
    unknown = [c for c in concepts if c not in ALL_CONCEPTS]
    if unknown:
        raise ReportError(f"unknown concepts: {', '.join(unknown)}")
    report: dict = {"report_version": REPORT_VERSION, "game": game_to_dict(game)}
    timing: dict = {}
    started = time.perf_counter()

    report["maximin"] = [
        format_rational(zerosum.maximin(game, i).value)
        for i in range(game.num_players)
    ]

    if "ne" in concepts:
        t0 = time.perf_counter()
        pure = [{"profile": list(p), "strict": strict}
                for p, strict in polytopes.enumerate_pure_ne(game)]
        section: dict = {"pure": pure}
        if game.shape == (2, 2):
            try:
                pairs = polytopes.mixed_ne_2x2(game)
                section["mixed_2x2"] = {
                    "status": "ok",
                    "equilibria": [[_mixed_to_dict(a), _mixed_to_dict(b)]
                                   for a, b in pairs],
                }
            except Degenerate2x2Error:
                section["mixed_2x2"] = {"status": "degenerate"}
        report["ne"] = section
        timing["ne"] = time.perf_counter() - t0

    polytope_results: dict = {}
    for concept in ("ce", "cce", "ircp"):
        if concept not in concepts:
            continue
        t0 = time.perf_counter()
        spec = polytopes.build_polytope(game, concept)
        singleton = polytopes.is_singleton(spec)
        entry: dict = {"singleton": singleton.is_singleton}
        if singleton.is_singleton:
            entry["point"] = certify.distribution_to_dict(game, singleton.point)
        else:
            entry["witnesses"] = [certify.distribution_to_dict(game, w)
                                  for w in singleton.witnesses]
        polytope_results[concept] = entry
        timing[concept] = time.perf_counter() - t0
    if polytope_results:
        report["concepts"] = polytope_results

    if check_unique:
        t0 = time.perf_counter()
        certificates: dict = {}
        if "ircp" in concepts:
            certificates["ircp"] = _certification_to_dict(
                game, certify.certify_unique_ircp(game))
        if "cce" in concepts:
            certificates["cce"] = _certification_to_dict(
                game, certify.certify_unique_pure_cce(game))
            report["classification"] = _classification_to_dict(
                game, certify.classify_unique_cce(game))
        report["certificates"] = certificates

        flagged: list = []
        seen = set()
        candidates = [p for p, strict in polytopes.enumerate_pure_ne(game) if strict]
        for key in ("ircp", "cce"):
            entry = certificates.get(key)
            if entry and entry["type"] == "certificate":
                candidates.append(tuple(entry["a_star"]))
        for profile in candidates:
            profile = tuple(profile)
            if profile in seen:
                continue
            seen.add(profile)
            flagged.append({
                "profile": list(profile),
                "gue": certify.is_gue(game, profile),
                "strict_fractional_gue": certify.is_strict_fractional_gue(game, profile),
            })
        report["gue"] = flagged
        timing["certification"] = time.perf_counter() - t0

    timing["total"] = time.perf_counter() - started
    report["timing_ms"] = {k: round(v * 1000.0, 3) for k, v in timing.items()}
    return report


def save_report(report: dict) -> bytes:
    return json.dumps(report, indent=2).encode("utf-8")


def load_report(data: bytes | str) -> dict:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportError(f"invalid report JSON: {exc}") from exc
    if not isinstance(raw, dict) or "game" not in raw:
        raise ReportError("report must be an object embedding its game")
    return raw


def _check_members(game: Game, concept: str, dists: list, problems: list,
                   where: str) -> None:
    spec = polytopes.build_polytope(game, concept)
    for idx, data in enumerate(dists):
        try:
            mu = certify.distribution_from_dict(game, data)
        except Exception as exc:
            problems.append(f"{where}[{idx}] unreadable: {exc}")
            continue
        if not polytopes.membership(spec, mu).is_member:
            problems.append(f"{where}[{idx}] is not a {concept.upper()} member")


def verify_report(report: dict) -> list[str]:
    """Re-check everything checkable in a report; empty list means clean."""
    problems: list[str] = []
    try:
        game = game_from_dict(report["game"])
    except (KeyError, GameFormatError) as exc:
        return [f"embedded game unreadable: {exc}"]

    if "maximin" in report:
        actual = [zerosum.maximin(game, i).value for i in range(game.num_players)]
        claimed = [parse_rational(v) for v in report["maximin"]]
        if actual != claimed:
            problems.append("maximin levels do not match a recomputation")

    if "ne" in report:
        actual_pure = [{"profile": list(p), "strict": s}
                       for p, s in polytopes.enumerate_pure_ne(game)]
        if report["ne"].get("pure") != actual_pure:
            problems.append("pure NE list does not match a recomputation")

    for concept, entry in report.get("concepts", {}).items():
        if entry.get("singleton"):
            _check_members(game, concept, [entry["point"]], problems,
                           f"concepts.{concept}.point")
        else:
            witnesses = entry.get("witnesses", [])
            if len(witnesses) != 2 or witnesses[0] == witnesses[1]:
                problems.append(f"concepts.{concept} needs two distinct witnesses")
            _check_members(game, concept, witnesses, problems,
                           f"concepts.{concept}.witnesses")

    for key, entry in report.get("certificates", {}).items():
        if entry.get("type") == "certificate":
            for problem in certify.verify_certificate(game, entry):
                problems.append(f"certificates.{key}: {problem}")
        else:
            for problem in certify.verify_refutation(game, entry):
                problems.append(f"certificates.{key}: {problem}")

    cls = report.get("classification")
    if cls:
        variant = cls.get("variant")
        if variant == certify.UNIQUE_PURE:
            for problem in certify.verify_certificate(game, cls["certificate"]):
                problems.append(f"classification: {problem}")
            _check_members(game, "cce", [cls["point"]], problems,
                           "classification.point")
        elif variant == certify.UNIQUE_MIXED_2X2:
            _check_members(game, "cce", [cls["point"]], problems,
                           "classification.point")
            try:
                subgame = game_from_dict(cls["subgame"])
                if not certify.is_matching_pennies_type(subgame):
                    problems.append(
                        "classification: subgame lacks the strict cyclic pattern")
                mu = certify.distribution_from_dict(game, cls["point"])
                marginals = [mu.marginal(game, i) for i in cls["mixers"]]
                claimed = [_mixed_from_dict(m) for m in cls["ne"]]
                if marginals != claimed:
                    problems.append(
                        "classification: stated NE disagrees with the point's marginals")
            except Exception as exc:
                problems.append(f"classification unreadable: {exc}")
        elif variant == certify.NOT_UNIQUE:
            witnesses = cls.get("witnesses", [])
            if len(witnesses) != 2 or witnesses[0] == witnesses[1]:
                problems.append("classification needs two distinct witnesses")
            _check_members(game, "cce", witnesses, problems,
                           "classification.witnesses")
        else:
            problems.append(f"classification: unknown variant {variant!r}")

    for idx, entry in enumerate(report.get("gue", [])):
        try:
            profile = tuple(int(x) for x in entry["profile"])
            if certify.is_gue(game, profile) != bool(entry["gue"]):
                problems.append(f"gue[{idx}]: pure-Pareto flag does not re-verify")
            if certify.is_strict_fractional_gue(game, profile) != bool(
                    entry["strict_fractional_gue"]):
                problems.append(f"gue[{idx}]: lottery-Pareto flag does not re-verify")
        except Exception as exc:
            problems.append(f"gue[{idx}] unreadable: {exc}")

    return problems
