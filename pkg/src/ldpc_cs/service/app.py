"""HTTP facade over the core package.

Every CLI subcommand has a matching endpoint; the CLI is a thin client that
posts to these routes (in-process by default).  Handlers are synchronous and
CPU-bound; domain errors surface as 400s, anything unexpected as a 500.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..alist import from_alist, to_alist
from ..analysis import (bernoulli_union_bound, critical_rate, exponent_curve,
                        measurement_bound, prop3_rate_bound, rate_function)
from ..experiments import (ExperimentConfig, cutoff_density, gen_column_regular,
                           parse_results_csv, plot_results_svg, results_csv,
                           run_trials)
from ..gf2 import (expurgate_first_coordinate, gen_ensemble_e, gen_peg,
                   generator_from_parity)
from ..greedy import ExhaustiveOracle, omp, sp
from ..reconstruct import bp_omp, bp_sp, mbbp_omp, mmpc_omp
from ..sensing import build_sensing_matrix, coherence, gershgorin_rip_bound
from . import models


def _load_code(alist_text: str, expurgate: bool):
    h = from_alist(alist_text)
    code = generator_from_parity(h)
    if expurgate:
        code = expurgate_first_coordinate(code)
        if code.s == 0:
            raise ValueError("expurgation left a dimension-0 code")
    return code


def create_app() -> FastAPI:
    app = FastAPI(title="ldpc-cs", version=__version__)

    @app.get("/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(version=__version__)

    @app.post("/codes/generate", response_model=models.GenCodeResponse)
    def gen_code(req: models.GenCodeRequest) -> models.GenCodeResponse:
        try:
            if req.kind == "ensemble-e":
                h = gen_ensemble_e(req.m, req.checks, req.row_weight, req.seed)
            elif req.kind == "col-regular":
                h = gen_column_regular(req.m, req.checks, req.col_weight,
                                       req.seed)
            else:
                h = gen_peg(req.m, req.checks, req.peg_degree, req.seed)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        rank = h.rank()
        dim = h.n - rank
        return models.GenCodeResponse(
            alist=to_alist(h), m=h.n, checks=h.n_checks, rank=rank,
            dimension=dim, rate=dim / h.n)

    @app.post("/matrix/info", response_model=models.MatrixInfoResponse)
    def matrix_info(req: models.MatrixInfoRequest) -> models.MatrixInfoResponse:
        try:
            code = _load_code(req.alist, req.expurgate)
            mat = build_sensing_matrix(code)
            rep = coherence(mat)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        table = [models.GuaranteeRow(
                    k=k,
                    recovery_guaranteed=rep.recovery_guaranteed(k),
                    gershgorin_delta=gershgorin_rip_bound(rep.mu, k))
                 for k in range(1, req.k_max + 1)]
        lines = [f"{'K':>3}  {'guaranteed':>10}  {'(K-1)mu':>10}"]
        lines += [f"{r.k:>3}  {str(r.recovery_guaranteed):>10}  "
                  f"{r.gershgorin_delta:>10.6f}" for r in table]
        head = (f"m = {mat.m}   N = {mat.n_cols}   s = {code.s}   "
                f"rate = {code.rate:.6f}\n"
                f"mu = {rep.mu:.6f} (weight {rep.achieving_weight})   "
                f"window K <= {rep.window_ok_for_k}   "
                f"guarantee K <= {rep.guarantee_k}")
        csv_lines = ["k,recovery_guaranteed,gershgorin_delta"]
        csv_lines += [f"{r.k},{str(r.recovery_guaranteed).lower()},"
                      f"{r.gershgorin_delta:.12g}" for r in table]
        return models.MatrixInfoResponse(
            m=mat.m, n_cols=mat.n_cols, dimension=code.s, rate=code.rate,
            mu=rep.mu, achieving_weight=rep.achieving_weight,
            window_ok_for_k=rep.window_ok_for_k, guarantee_k=rep.guarantee_k,
            table=table, text=head + "\n" + "\n".join(lines),
            csv="\n".join(csv_lines) + "\n")

    @app.post("/analyze", response_model=models.AnalyzeResponse)
    def analyze(req: models.AnalyzeRequest) -> models.AnalyzeResponse:
        try:
            if req.curve == "exponent":
                curve = exponent_curve(req.rate, req.w_r, req.theta_step)
                lines = ["theta,b_theta"]
                lines += [f"{t:.12g},{b:.12g}"
                          for t, b in zip(curve.thetas, curve.b)]
                summary = {
                    "rate": req.rate,
                    "w_r": float(req.w_r),
                    "b_at_half": req.rate * math.log(2.0),
                    "max_b": float(np.max(curve.b)),
                }
            elif req.curve == "rate-function":
                xs = np.arange(0.0, req.x_max + 1e-12, req.x_step)
                lines = ["x,i_exact,i_quadratic,theta_star"]
                for x in xs:
                    rf = rate_function(float(x))
                    lines.append(f"{x:.12g},{rf.i_exact:.12g},"
                                 f"{rf.i_quadratic:.12g},{rf.theta_star:.12g}")
                summary = {"x_max": req.x_max, "x_step": req.x_step}
            else:
                vals = {
                    "measurement_bound": float(measurement_bound(req.k,
                                                                 req.n_cols)),
                    "rate_bound": prop3_rate_bound(req.k),
                    "rate_bound_proof_variant": prop3_rate_bound(
                        req.k, proof_variant=True),
                    "critical_rate": critical_rate(req.k),
                    "union_bound_log": bernoulli_union_bound(
                        req.m, req.n_cols, req.k),
                }
                lines = ["name,value"]
                lines += [f"{name},{val:.12g}" for name, val in vals.items()]
                summary = vals
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return models.AnalyzeResponse(csv="\n".join(lines) + "\n",
                                      summary=summary)

    @app.post("/decode", response_model=models.DecodeResponse)
    def decode(req: models.DecodeRequest) -> models.DecodeResponse:
        try:
            code = _load_code(req.alist, req.expurgate)
            y = np.asarray(req.y, dtype=np.float64)
            if y.shape[0] != code.m:
                raise ValueError(
                    f"observation length {y.shape[0]} != code length {code.m}")
            basis = "systematic" if req.systematic_basis else None
            if req.algorithm in ("omp", "sp"):
                mat = build_sensing_matrix(code)
                oracle = ExhaustiveOracle.from_sensing(mat, req.scaling)
                result = (omp(oracle, y, req.k) if req.algorithm == "omp"
                          else sp(oracle, y, req.k))
            elif req.algorithm == "bp-omp":
                result = bp_omp(code, y, req.k, list_size=req.list_size,
                                bias=req.bias, seed=req.seed,
                                signal_kind=req.signal_kind, basis=basis,
                                sigma_floor=req.sigma_floor,
                                max_iters=req.max_iters)
            elif req.algorithm == "bp-sp":
                result = bp_sp(code, y, req.k, list_size=req.list_size,
                               bias=req.bias, seed=req.seed,
                               signal_kind=req.signal_kind, basis=basis,
                               sigma_floor=req.sigma_floor,
                               max_iters=req.max_iters)
            elif req.algorithm == "mmpc-omp":
                result = mmpc_omp(code, y, req.k, m_configs=req.m_configs,
                                  seed=req.seed, signal_kind=req.signal_kind,
                                  basis=basis, sigma_floor=req.sigma_floor,
                                  max_iters=req.max_iters)
            else:
                result = mbbp_omp(code, y, req.k, n_bases=req.n_bases,
                                  seed=req.seed, signal_kind=req.signal_kind,
                                  decoder=req.decoder, psi0=req.psi0,
                                  psi1=req.psi1, sigma_floor=req.sigma_floor,
                                  max_iters=req.max_iters)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return models.DecodeResponse(
            algorithm=req.algorithm,
            support=list(result.estimate.support),
            values=list(result.estimate.values),
            residual_norm=result.residual_norm,
            iterations=result.iterations,
            converged=result.converged)

    @app.post("/simulate", response_model=models.SimulateResponse)
    def simulate(config: ExperimentConfig) -> models.SimulateResponse:
        try:
            rows = run_trials(config)
            cutoff = cutoff_density(rows)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return models.SimulateResponse(
            rows=[models.SummaryRowModel(**vars(r)) for r in rows],
            csv=results_csv(rows), cutoff_at_1pct=cutoff)

    @app.post("/plot", response_model=models.PlotResponse)
    def plot(req: models.PlotRequest) -> models.PlotResponse:
        try:
            rows = parse_results_csv(req.csv)
            svg = plot_results_svg(rows, logy=req.logy)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return models.PlotResponse(svg=svg)

    return app
