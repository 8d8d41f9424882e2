"""The parameter-to-logits network: two tanh layers, linear output.

Forward passes cache their activations; backward returns exact
reverse-mode gradients of a scalar contraction with the output logits.
Weights use LeCun initialization, Normal(0, 1/fan_in), biases start at
zero, and the output layer carries no bias (a constant logit shift
would not change the softmax mesh anyway).
"""

from dataclasses import dataclass

import numpy as np

PARAM_NAMES = ("W1", "b1", "W2", "b2", "W3")


@dataclass
class MlpParams:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray
    W3: np.ndarray

    @property
    def n_inputs(self):
        return self.W1.shape[1]

    @property
    def n_outputs(self):
        return self.W3.shape[0]

    def arrays(self):
        return [getattr(self, name) for name in PARAM_NAMES]

    def copy(self):
        return MlpParams(*(a.copy() for a in self.arrays()))


def lecun_init(n_inputs, n_outputs, hidden=(10, 10), seed=0) -> MlpParams:
    """Weights ~ Normal(0, 1/fan_in), zero biases; deterministic per seed."""
    if n_inputs < 1 or n_outputs < 2:
        raise ValueError("need n_inputs >= 1 and n_outputs >= 2")
    h1, h2 = hidden
    rng = np.random.default_rng(seed)
    return MlpParams(
        W1=rng.normal(0.0, 1.0 / np.sqrt(n_inputs), size=(h1, n_inputs)),
        b1=np.zeros(h1),
        W2=rng.normal(0.0, 1.0 / np.sqrt(h1), size=(h2, h1)),
        b2=np.zeros(h2),
        W3=rng.normal(0.0, 1.0 / np.sqrt(h2), size=(n_outputs, h2)),
    )


def mlp_forward(params: MlpParams, x):
    """Logits for one encoded input vector; returns (logits, cache)."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("network input contains non-finite entries")
    z1 = np.tanh(params.W1 @ x + params.b1)
    z2 = np.tanh(params.W2 @ z1 + params.b2)
    logits = params.W3 @ z2
    return logits, (x, z1, z2)


def mlp_backward(params: MlpParams, cache, grad_logits):
    """Gradients of grad_logits . logits; returns (grads, grad_input)."""
    x, z1, z2 = cache
    g = np.asarray(grad_logits, dtype=float)
    dW3 = np.outer(g, z2)
    dz2 = (params.W3.T @ g) * (1.0 - z2 * z2)
    dW2 = np.outer(dz2, z1)
    db2 = dz2
    dz1 = (params.W2.T @ dz2) * (1.0 - z1 * z1)
    dW1 = np.outer(dz1, x)
    db1 = dz1
    grad_input = params.W1.T @ dz1
    grads = MlpParams(W1=dW1, b1=db1, W2=dW2, b2=db2, W3=dW3)
    return grads, grad_input


def zero_grads(params: MlpParams) -> MlpParams:
    return MlpParams(*(np.zeros_like(a) for a in params.arrays()))


def accumulate(total: MlpParams, grads: MlpParams, weight=1.0):
    for t, g in zip(total.arrays(), grads.arrays()):
        t += weight * g
    return total
