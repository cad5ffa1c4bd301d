"""Sign-gradient attacks in the l-inf ball.

Both attacks ascend the cross-entropy of the target model. PGD perturbs the
signal directly; SAP perturbs a latent ``theta`` that reaches the signal
through Gaussian smoothing. Only the epsilon ball is enforced: z-scored
signals have no natural value range to clip to.
"""

__docformat__ = "google"

import numpy as np

from ..core import NonFiniteError, Tensor, conv1d, softmax_cross_entropy
from ..log import logger
from ..model import forward_graph, weight_tensors
from .kernels import averaged_kernel
from .spec import AttackFamily, AttackSpec


def _attack_loss(target, weights, x, y, view):
    if view is not None:
        x = view.apply(x)
    logits, _features = forward_graph(target.arch, weights, x)
    return softmax_cross_entropy(logits, y)


def _input_gradient(target, weights, value, y, view, transform, step):
    variable = Tensor(value, requires_grad=True)
    loss = _attack_loss(target, weights, transform(variable), y, view)
    loss.backward()
    grad = variable.grad
    bad = np.count_nonzero(~np.isfinite(grad))
    if bad:
        logger().error(f"Attack gradient has {bad} non-finite entries at step {step}")
        raise NonFiniteError(f"{bad} non-finite attack gradient entries at step {step}")
    return grad


def _prepare(x, y):
    x = np.array(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    y = np.asarray(y, dtype=np.int64).reshape(-1)
    if x.shape[0] != y.size:
        raise ValueError(f"{x.shape[0]} signals for {y.size} labels")
    return x, y


def pgd(target, x, y, spec: AttackSpec, view=None):
    """Projected sign-gradient ascent on the signal.

    Args:
    - target (ClassifierParams): Model under attack.
    - x (ndarray): N x L natural signals.
    - y (ndarray): N labels.
    - spec (AttackSpec): PGD spec.
    - view (BandView, optional): Input filter in front of the target; the
      gradient flows through it.

    Returns:
    ndarray: Perturbed signals with ``|x' - x| <= epsilon`` everywhere.
    """
    if spec.family is not AttackFamily.PGD:
        raise ValueError(f"pgd got a {spec.family.value} spec")
    x, y = _prepare(x, y)
    if spec.epsilon == 0:
        return x

    weights = weight_tensors(target)
    low, high = x - spec.epsilon, x + spec.epsilon
    adv = x.copy()
    for step in range(spec.steps):
        grad = _input_gradient(target, weights, adv, y, view, lambda v: v, step)
        adv = np.clip(adv + spec.alpha * np.sign(grad), low, high)
    return adv


def smoothing(theta, kernel):
    """Same-length zero-padded convolution of every row of ``theta`` with ``kernel``."""
    theta = theta if isinstance(theta, Tensor) else Tensor(theta)
    n, length = theta.shape
    width = kernel.shape[0]
    smoothed = conv1d(
        theta.reshape(n, 1, length), kernel.reshape(1, 1, width), pad=width // 2
    )
    return smoothed.reshape(n, length)


def sap(target, x, y, spec: AttackSpec, view=None):
    """Smoothed adversarial perturbation: sign ascent on the latent ``theta``.

    ``theta`` starts at zero and stays in the epsilon ball; the returned
    signal is ``x`` plus the kernel-averaged smoothing of ``theta``. Unit-sum
    non-negative kernels keep that perturbation in the ball as well.
    """
    if spec.family is not AttackFamily.SAP:
        raise ValueError(f"sap got a {spec.family.value} spec")
    x, y = _prepare(x, y)
    if spec.epsilon == 0:
        return x

    kernel = averaged_kernel(spec.kernels)
    weights = weight_tensors(target)
    theta = np.zeros_like(x)
    for step in range(spec.steps):
        grad = _input_gradient(
            target, weights, theta, y, view, lambda t: smoothing(t, kernel) + x, step
        )
        theta = np.clip(theta + spec.alpha * np.sign(grad), -spec.epsilon, spec.epsilon)
    return x + smoothing(theta, kernel).data


ATTACKS = {AttackFamily.PGD: pgd, AttackFamily.SAP: sap}


def perturb(target, x, y, spec: AttackSpec, view=None):
    return ATTACKS[spec.family](target, x, y, spec, view=view)
