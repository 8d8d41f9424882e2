"""Training loops: direct mesh adaptation and the parametric network.

Direct (non-parametric) mode optimizes the logits of a single problem,
starting from zeros (the uniform partition).  Parametric mode trains
the network that maps an encoded parameter tuple to logits, using the
balanced energy averaged over mini-batches; one epoch is a full pass
over the training tuples in a freshly shuffled order.

Each step runs the same chain: build mesh, assemble, solve (never
differentiated), evaluate the energy, contract the closed-form element
derivatives, pull back, update.
"""

import csv
import logging
from dataclasses import dataclass, field

import numpy as np

from . import loads as ld
from .energy import balanced_ritz, relative_error, ritz_gradient
from .errors import ConfigurationError, DegenerateMeshError, SolverError
from .network import MlpParams, accumulate, lecun_init, mlp_backward, mlp_forward, zero_grads
from .optim import AdamState, adam_step
from .pipeline import evaluate, evaluate_mesh, evaluate_uniform
from .problems import make_problem
from .sampling import ParamGrid

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
FLOAT_FMT = "%.17g"


@dataclass
class History:
    """Per-iteration log rows with a fixed CSV schema."""

    columns: tuple
    rows: list = field(default_factory=list)

    def append(self, *row):
        self.rows.append(tuple(row))

    def column(self, name):
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([_fmt(v) for v in row])


def _fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return FLOAT_FMT % value


def train_nonparametric(problem, schedule=((0, 1e-2),), iterations=1000,
                        seed=0, method="auto", callback=None):
    """Adapt one problem's mesh by gradient descent on the Ritz energy.

    The schedule is indexed by iteration here.  Returns (theta, history)
    where history rows are (iteration, J, e_theta); row t is the state
    after t updates.  A degenerate mesh aborts with the iteration index.
    """
    theta = np.zeros(problem.theta_size)
    state = AdamState.for_params([theta], schedule=schedule)
    try:
        j_exact = ld.reference_ritz(problem)
    except ConfigurationError:
        j_exact = None
    history = History(columns=("iteration", "J", "e_theta"))

    def record(t, J):
        e = relative_error(J, j_exact) if j_exact is not None else np.nan
        history.append(t, J, e)
        if callback is not None:
            callback(t, theta, J)

    for t in range(iterations):
        try:
            ev = evaluate(problem, theta, method=method)
        except DegenerateMeshError as exc:
            raise DegenerateMeshError(f"iteration {t}: {exc}") from exc
        grad = ritz_gradient(problem, ev.mesh, ev.labeling, ev.c)
        record(t, ev.J)
        adam_step(state, [theta], [grad], epoch=t)
    record(iterations, evaluate(problem, theta, method=method).J)
    return theta, history


@dataclass
class ParametricRun:
    params: MlpParams
    state: AdamState
    history: History
    grid: ParamGrid
    family: str
    n_elements: int
    uniform_refs: dict
    epochs_done: int = 0

    def logits_for(self, sigma):
        out, _ = mlp_forward(self.params, self.grid.encode(sigma))
        return out

    def problem_for(self, sigma):
        return make_problem(self.family, sigma=tuple(sigma), n_elements=self.n_elements)

    def mesh_for(self, sigma):
        return self.problem_for(sigma).build_mesh(self.logits_for(sigma))


def uniform_reference_energies(family, grid: ParamGrid, n_elements, indices=None):
    """J at the equispaced mesh per tuple; the balancing denominators."""
    refs = {}
    rows = grid.tuples if indices is None else grid.tuples[indices]
    for sigma in rows:
        problem = make_problem(family, sigma=tuple(sigma), n_elements=n_elements)
        refs[tuple(sigma)] = evaluate_uniform(problem).J
    return refs


def train_parametric(family, grid: ParamGrid, n_elements, schedule=((0, 1e-2),),
                     epochs=50, batch=10, seed=0, hidden=(10, 10),
                     monitor_every=10, checkpoint_path=None, method="auto"):
    """Train the parameter-to-mesh network on the balanced Ritz loss.

    The schedule is indexed by epoch.  History rows are
    (iteration, loss, e_test) where loss is the batch-averaged balanced
    energy and e_test averages the monitor tuples' relative errors.
    Tuples whose mesh degenerates (or whose system defeats the solver)
    are skipped and logged, not fatal.  Returns a ParametricRun.
    """
    needed = np.union1d(grid.train_idx, grid.monitor_idx)
    refs = uniform_reference_energies(family, grid, n_elements, indices=needed)
    probe = make_problem(family, sigma=tuple(grid.tuples[0]), n_elements=n_elements)
    params = lecun_init(len(grid.axes), probe.theta_size, hidden=hidden, seed=seed)
    state = AdamState.for_params(params, schedule=schedule)
    history = History(columns=("iteration", "loss", "e_test"))
    exact = {tuple(s): ld.reference_ritz(make_problem(family, sigma=tuple(s),
                                                      n_elements=n_elements))
             for s in grid.tuples[grid.monitor_idx]}
    run = ParametricRun(params=params, state=state, history=history, grid=grid,
                        family=family, n_elements=n_elements, uniform_refs=refs)

    def monitor_error():
        errs = []
        for sigma in grid.tuples[grid.monitor_idx]:
            sig = tuple(sigma)
            try:
                ev = evaluate_mesh(run.problem_for(sig), run.mesh_for(sig), method=method)
            except (DegenerateMeshError, SolverError) as exc:
                logger.warning("monitor skipped sigma=%s: %s", sig, exc)
                continue
            errs.append(relative_error(ev.J, exact[sig]))
        return float(np.mean(errs)) if errs else float("nan")

    rng = np.random.default_rng(seed)
    iteration = 0
    last_loss = np.nan
    history.append(iteration, last_loss, monitor_error())
    for epoch in range(epochs):
        order = grid.train_idx.copy()
        rng.shuffle(order)
        for lo in range(0, order.size, batch):
            members = order[lo: lo + batch]
            grads = zero_grads(params)
            losses = []
            for idx in members:
                sigma = tuple(grid.tuples[idx])
                problem = run.problem_for(sigma)
                x = grid.encode(sigma)
                logits, cache = mlp_forward(params, x)
                try:
                    ev = evaluate(problem, logits, method=method)
                except (DegenerateMeshError, SolverError) as exc:
                    # one bad sample must not kill a long run
                    logger.warning("skipping sigma=%s at iteration %d: %s",
                                   sigma, iteration, exc)
                    continue
                ref = refs[sigma]
                losses.append(balanced_ritz(ev.J, ref))
                grad_logits = ritz_gradient(problem, ev.mesh, ev.labeling, ev.c,
                                            scale=1.0 / abs(ref))
                g, _ = mlp_backward(params, cache, grad_logits)
                accumulate(grads, g)
            iteration += 1
            if not losses:
                continue
            for arr in grads.arrays():
                arr /= len(losses)
            last_loss = float(np.mean(losses))
            adam_step(state, params, grads, epoch=epoch)
            if iteration % monitor_every == 0:
                history.append(iteration, last_loss, monitor_error())
        run.epochs_done = epoch + 1
    if iteration % monitor_every != 0:
        history.append(iteration, last_loss, monitor_error())
    if checkpoint_path is not None:
        save_checkpoint(checkpoint_path, params, state, run.epochs_done)
    return run


def save_checkpoint(path, params: MlpParams, state: AdamState, epoch):
    """Versioned dump of network weights, optimizer moments, and epoch."""
    arrays = {
        "version": np.array(CHECKPOINT_VERSION),
        "epoch": np.array(epoch),
        "t": np.array(state.t),
        "beta1": np.array(state.beta1),
        "beta2": np.array(state.beta2),
        "eps": np.array(state.eps),
        "schedule": np.array(state.schedule, dtype=float),
    }
    for i, name in enumerate(("W1", "b1", "W2", "b2", "W3")):
        arrays[name] = params.arrays()[i]
        arrays["m_" + name] = state.m[i]
        arrays["v_" + name] = state.v[i]
    np.savez(path, **arrays)


def load_checkpoint(path):
    with np.load(path) as data:
        if int(data["version"]) != CHECKPOINT_VERSION:
            raise ConfigurationError(f"unsupported checkpoint version {data['version']}")
        names = ("W1", "b1", "W2", "b2", "W3")
        params = MlpParams(*(data[n].copy() for n in names))
        state = AdamState(
            m=[data["m_" + n].copy() for n in names],
            v=[data["v_" + n].copy() for n in names],
            t=int(data["t"]),
            beta1=float(data["beta1"]),
            beta2=float(data["beta2"]),
            eps=float(data["eps"]),
            schedule=[(float(a), float(b)) for a, b in data["schedule"]],
        )
        epoch = int(data["epoch"])
    return params, state, epoch
