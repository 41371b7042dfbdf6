"""
Batch front end: enhance, compare, inspect and synthesize.

Each image is processed independently (optionally in worker processes); the
manifest is assembled in input order once all workers are done.
"""

import csv
import logging
import time
from concurrent.futures import Future, ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter
from tqdm import tqdm

from l2uwe.batch.objects import EnhanceConfig, ImageRecord, RunManifest
from l2uwe.fusion.objects import EnhanceResult
from l2uwe.fusion.pipeline import l2uwe_enhance_detailed
from l2uwe.imgcore.io import is_image_file, read_image, write_image, write_pfm, write_png
from l2uwe.imgcore.objects import ImageF
from l2uwe.metrics.objects import MetricsReport, PairReport
from l2uwe.metrics.scores import metrics_report
from l2uwe.synthetic.darken import synthetic_suite
from l2uwe.utils import EnhancementException, ImageReadException

logger = logging.getLogger(__name__)

OUTPUT_SUFFIX = "_l2uwe"
MANIFEST_NAME = "manifest.json"
METRIC_FIELDS = ("gcf", "e_score", "r_score", "mean_luminance_in", "mean_luminance_out")


class CompareSummary(BaseModel):
    pairs: list[PairReport] = Field(default_factory=list)
    unmatched: list[str] = Field(default_factory=list, description="File stems present in only one directory")
    aggregate: dict[str, tuple[float, float]] = Field(
        default_factory=dict, description="Metric name to (mean, std) over all pairs"
    )
    csv_path: str | None = None


def collect_inputs(paths: list[str | Path]) -> list[Path]:
    """
    Expand files and directories into a list of image files.

    Directories are scanned non-recursively for PNG, JPEG and PFM files, in
    sorted order. A file reached twice (listed again, or both directly and
    through its directory) is kept once, at its first position.
    """
    collected: dict[Path, Path] = {}
    for entry in paths:
        path = Path(entry).expanduser()
        found = sorted(p for p in path.iterdir() if p.is_file() and is_image_file(p)) if path.is_dir() else [path]
        for item in found:
            collected.setdefault(item.resolve(), item)
    return list(collected.values())


def dump_intermediates(result: EnhanceResult, output_dir: Path) -> list[Path]:
    """
    Write every intermediate of one pipeline run.

    CCI as PNG with code c at intensity c/7; lighting fields and transmission
    maps as PNG and PFM; fusion inputs, weight maps and normalized weights as
    PNG and PFM; the pre-clamp fused image as PFM.
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    written = [write_png(result.cci.to_image(), output_dir / "cci.png")]

    for index, single in enumerate(result.inputs, start=1):
        prefix = output_dir / f"input{index}_m{single.m}"
        written += write_image(single.lighting_raw.image, Path(f"{prefix}_lighting_raw"))
        written += write_image(single.lighting.image, Path(f"{prefix}_lighting"))
        written += write_image(single.transmission_raw.image, Path(f"{prefix}_transmission_raw"))
        written += write_image(single.transmission.image, Path(f"{prefix}_transmission"))
        written += write_image(single.output, prefix)

    for index, (maps, normalized) in enumerate(zip(result.weight_maps, result.normalized, strict=True), start=1):
        prefix = output_dir / f"input{index}"
        written += write_image(maps.saliency, Path(f"{prefix}_weight_saliency"))
        written += write_image(maps.luminance, Path(f"{prefix}_weight_luminance"))
        written += write_image(maps.local_contrast, Path(f"{prefix}_weight_local_contrast"))
        written += write_image(normalized.image, Path(f"{prefix}_weight_normalized"))

    written.append(write_pfm(result.fused_raw, output_dir / "fused_unclamped.pfm"))
    return written


def process_image(input_path: Path, output_dir: Path, config: EnhanceConfig) -> tuple[ImageRecord, float]:
    """
    Enhance one image and write its output.

    Any failure, including ones from outside the pipeline such as running out
    of memory, is recorded in the returned record instead of raised, so one
    bad file does not stop a batch.

    Returns
    -------
    tuple[ImageRecord, float]
        Manifest record and wall-clock seconds
    """
    start = time.perf_counter()
    record = ImageRecord(input_path=str(input_path), config=config)
    try:
        lowlight = read_image(input_path)
        if lowlight.channels == 1:
            lowlight = ImageF(np.repeat(lowlight.data, 3, axis=2))

        result = l2uwe_enhance_detailed(lowlight, config)
        output_path = write_png(result.output, output_dir / f"{input_path.stem}{OUTPUT_SUFFIX}.png")
        record.output_path = str(output_path)

        if config.dump_intermediates:
            dump_intermediates(result, output_dir / input_path.stem)
        if config.metrics:
            record.metrics = metrics_report(lowlight, result.output)
    except (ImageReadException, EnhancementException, OSError) as e:
        logger.error(f"Failed to process {input_path}: {e}")
        record.status = "error"
        record.error = str(e)
    except Exception as e:
        logger.exception(f"Unexpected failure on {input_path}")
        record.status = "error"
        record.error = f"{type(e).__name__}: {e}"
    return record, time.perf_counter() - start


def collect_result(future: Future, input_path: Path, config: EnhanceConfig) -> tuple[ImageRecord, float]:
    """Result of a worker future, or an error record if the worker itself failed."""
    try:
        return future.result()
    except Exception as e:
        # The worker itself died, e.g. killed for memory
        logger.error(f"Worker failed on {input_path}: {e}")
        error = f"{type(e).__name__}: {e}"
        return ImageRecord(input_path=str(input_path), config=config, status="error", error=error), 0.0


def run_enhance(
    input_paths: list[str | Path],
    output_dir: str | Path,
    config: EnhanceConfig,
    jobs: int = 1,
) -> RunManifest:
    """
    Enhance a batch of images and write ``manifest.json``.

    Parameters
    ----------
    input_paths : list[str | Path]
        Image files and/or directories of images
    output_dir : str | Path
        Destination of ``<stem>_l2uwe.png`` files and the manifest
    config : EnhanceConfig
        Resolved pipeline configuration
    jobs : int
        Worker processes; 1 runs in-process

    Returns
    -------
    RunManifest
        One record per input, in input order
    """
    output_dir = Path(output_dir).expanduser()
    output_dir.mkdir(parents=True, exist_ok=True)
    inputs = collect_inputs(input_paths)
    manifest = RunManifest(config=config, created_at=datetime.now(timezone.utc).isoformat())
    results: list[tuple[ImageRecord, float]] = []

    if not inputs:
        logger.warning("No input images found")
    elif jobs > 1 and len(inputs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(process_image, path, output_dir, config) for path in inputs]
            progress = tqdm(zip(futures, inputs, strict=True), total=len(inputs), desc="enhance", unit="img")
            results = [collect_result(future, path, config) for future, path in progress]
    else:
        results = [process_image(path, output_dir, config) for path in tqdm(inputs, desc="enhance", unit="img")]

    for record, elapsed in results:
        manifest.records.append(record)
        manifest.timings[record.input_path] = round(elapsed, 4)

    manifest_path = output_dir / MANIFEST_NAME
    manifest_path.write_text(manifest.model_dump_json(indent=2))
    logger.info(f"Processed {manifest.succeeded} image(s), {manifest.failed} failure(s); manifest at {manifest_path}")
    if manifest.failed:
        logger.warning(f"{manifest.failed} image(s) could not be processed, see {manifest_path}")
    return manifest


def _match_key(path: Path) -> str:
    return path.stem.removesuffix(OUTPUT_SUFFIX)


def aggregate_metrics(reports: list[MetricsReport]) -> dict[str, tuple[float, float]]:
    """Population mean and standard deviation of each metric; absent e-scores are skipped."""
    aggregate = {}
    for name in METRIC_FIELDS:
        values = [getattr(r, name) for r in reports if getattr(r, name) is not None]
        if values:
            aggregate[name] = (float(np.mean(values)), float(np.std(values)))
    return aggregate


def write_aggregate_csv(aggregate: dict[str, tuple[float, float]], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["metric", "mean", "std"])
        for name, (mean, std) in aggregate.items():
            writer.writerow([name, f"{mean:.6f}", f"{std:.6f}"])
    return path


def run_compare(
    original_dir: str | Path,
    enhanced_dir: str | Path,
    output_dir: str | Path | None = None,
) -> CompareSummary:
    """
    Score enhanced images against their originals.

    Files are paired by stem; ``<stem>_l2uwe`` in ``enhanced_dir`` pairs with
    ``<stem>`` in ``original_dir``. Writes ``metrics.json`` (per pair) and
    ``metrics.csv`` (``metric,mean,std``) to ``output_dir``, which defaults to
    ``enhanced_dir``.

    Raises
    ------
    FileNotFoundError
        If either argument is not an existing directory
    """
    for directory in (original_dir, enhanced_dir):
        if not Path(directory).expanduser().is_dir():
            raise FileNotFoundError(f"Not a directory: {directory}")

    originals = {_match_key(p): p for p in collect_inputs([original_dir])}
    enhanced = {_match_key(p): p for p in collect_inputs([enhanced_dir])}
    output_dir = Path(output_dir or enhanced_dir).expanduser()

    summary = CompareSummary(unmatched=sorted(set(originals) ^ set(enhanced)))
    for name in summary.unmatched:
        logger.warning(f"No counterpart for {name}, skipped")

    for name in sorted(set(originals) & set(enhanced)):
        try:
            original = read_image(originals[name])
            result = read_image(enhanced[name])
            report = metrics_report(original, result)
        except (ImageReadException, EnhancementException) as e:
            logger.error(f"Failed to compare {name}: {e}")
            summary.unmatched.append(name)
            continue
        summary.pairs.append(
            PairReport(
                name=name,
                original_path=str(originals[name]),
                enhanced_path=str(enhanced[name]),
                metrics=report,
            )
        )

    if not summary.pairs:
        logger.warning("No matching image pairs to compare")

    summary.aggregate = aggregate_metrics([pair.metrics for pair in summary.pairs])
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / "metrics.json").write_bytes(TypeAdapter(list[PairReport]).dump_json(summary.pairs, indent=2))
    summary.csv_path = str(write_aggregate_csv(summary.aggregate, output_dir / "metrics.csv"))
    logger.info(f"Compared {len(summary.pairs)} pair(s); aggregate written to {summary.csv_path}")
    return summary


def run_inspect(input_path: str | Path, output_dir: str | Path, config: EnhanceConfig) -> list[Path]:
    """Run the pipeline on one image and dump all intermediates plus the output."""
    input_path = Path(input_path).expanduser()
    output_dir = Path(output_dir).expanduser()
    lowlight = read_image(input_path)
    if lowlight.channels == 1:
        lowlight = ImageF(np.repeat(lowlight.data, 3, axis=2))

    result = l2uwe_enhance_detailed(lowlight, config)
    written = dump_intermediates(result, output_dir)
    written.append(write_png(result.output, output_dir / f"{input_path.stem}{OUTPUT_SUFFIX}.png"))
    logger.info(f"Wrote {len(written)} file(s) to {output_dir}")
    return written


def run_synthesize(
    output_dir: str | Path, count: int, height: int = 256, width: int = 256, seed: int = 0, noise: float = 0.0
) -> int:
    """Write ``count`` clean/low-light pairs under ``clean/`` and ``lowlight/``."""
    output_dir = Path(output_dir).expanduser()
    for index, (clean, lowlight) in enumerate(synthetic_suite(count, height, width, seed, noise)):
        name = f"synthetic_{index:03d}.png"
        write_png(clean, output_dir / "clean" / name)
        write_png(lowlight, output_dir / "lowlight" / name)
    logger.info(f"Wrote {count} synthetic pair(s) to {output_dir}")
    return count
