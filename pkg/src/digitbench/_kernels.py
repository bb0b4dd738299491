"""Numba-compiled inner loop for online backpropagation.

The per-sample update order is the contract: forward pass, output deltas
from the sigmoid derivative, hidden deltas, then momentum-folded weight
changes applied immediately before the next sample. Everything is float64
and single-threaded, so results are bit-reproducible for a fixed seed and
sample order. ``nogil`` lets the service train in a background thread
without stalling request handling.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def train_epoch_kernel(w_ih, b_h, w_ho, b_o, m_ih, mb_h, m_ho, mb_o, X, labels, eta, gamma):
    """Run one epoch of per-sample updates in array order.

    Mutates the weight, bias, and momentum arrays in place and returns the
    epoch MSE: the mean over samples of the squared-error sum measured on
    each sample's pre-update forward pass.
    """
    n_samples = X.shape[0]
    n_in = w_ih.shape[1]
    n_hid = w_ih.shape[0]
    n_out = w_ho.shape[0]
    hidden = np.empty(n_hid)
    output = np.empty(n_out)
    delta_out = np.empty(n_out)
    delta_hid = np.empty(n_hid)
    sse_total = 0.0

    for s in range(n_samples):
        x = X[s]
        label = labels[s]

        for j in range(n_hid):
            acc = b_h[j]
            for i in range(n_in):
                acc += w_ih[j, i] * x[i]
            hidden[j] = 1.0 / (1.0 + np.exp(-acc))
        for k in range(n_out):
            acc = b_o[k]
            for j in range(n_hid):
                acc += w_ho[k, j] * hidden[j]
            output[k] = 1.0 / (1.0 + np.exp(-acc))

        for k in range(n_out):
            target = 1.0 if k == label else 0.0
            err = target - output[k]
            sse_total += err * err
            delta_out[k] = 2.0 * (output[k] - target) * output[k] * (1.0 - output[k])

        for j in range(n_hid):
            acc = 0.0
            for k in range(n_out):
                acc += w_ho[k, j] * delta_out[k]
            delta_hid[j] = acc * hidden[j] * (1.0 - hidden[j])

        for k in range(n_out):
            for j in range(n_hid):
                change = gamma * m_ho[k, j] - eta * delta_out[k] * hidden[j]
                m_ho[k, j] = change
                w_ho[k, j] += change
            change = gamma * mb_o[k] - eta * delta_out[k]
            mb_o[k] = change
            b_o[k] += change
        for j in range(n_hid):
            for i in range(n_in):
                change = gamma * m_ih[j, i] - eta * delta_hid[j] * x[i]
                m_ih[j, i] = change
                w_ih[j, i] += change
            change = gamma * mb_h[j] - eta * delta_hid[j]
            mb_h[j] = change
            b_h[j] += change

    return sse_total / n_samples
