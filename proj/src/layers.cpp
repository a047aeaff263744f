#include "disc/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "disc/check.hpp"
#include "disc/parallel.hpp"

namespace disc {

std::size_t conv_out_size(std::size_t in, std::size_t kernel, std::size_t stride,
                          std::size_t pad) {
  DISC_CHECK(kernel <= in + 2 * pad,
             "kernel " << kernel << " exceeds padded input " << in + 2 * pad);
  return (in + 2 * pad - kernel) / stride + 1;
}

namespace {

void require_chw(const Tensor& t, const char* what) {
  DISC_CHECK(t.rank() == 3, what << " expects a C x H x W tensor, got rank "
                                 << t.rank());
}

}  // namespace

Tensor conv2d_forward(const Tensor& input, const Tensor& weights,
                      const Tensor& bias, int stride, int pad) {
  require_chw(input, "conv2d_forward");
  DISC_CHECK(weights.rank() == 4, "conv2d_forward weights must be K x C x kh x kw");
  DISC_CHECK(stride >= 1 && pad >= 0, "conv2d_forward: bad stride/pad");
  const std::size_t C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const std::size_t K = weights.dim(0), kh = weights.dim(2), kw = weights.dim(3);
  DISC_CHECK(weights.dim(1) == C, "conv2d_forward: input has " << C
                                      << " channels but weights expect "
                                      << weights.dim(1));
  DISC_CHECK(bias.rank() == 1 && bias.dim(0) == K,
             "conv2d_forward: bias must have one entry per filter");
  const std::size_t OH = conv_out_size(H, kh, stride, pad);
  const std::size_t OW = conv_out_size(W, kw, stride, pad);

  Tensor out({K, OH, OW});
  const double* in = input.data.data();
  const double* wt = weights.data.data();
  double* o = out.data.data();

  parallel_for(K, [&](std::size_t k0, std::size_t k1) {
    for (std::size_t k = k0; k < k1; ++k) {
      double* oplane = o + k * OH * OW;
      std::fill(oplane, oplane + OH * OW, bias[k]);
      for (std::size_t c = 0; c < C; ++c) {
        const double* iplane = in + c * H * W;
        const double* wplane = wt + (k * C + c) * kh * kw;
        for (std::size_t ky = 0; ky < kh; ++ky) {
          for (std::size_t kx = 0; kx < kw; ++kx) {
            const double w = wplane[ky * kw + kx];
            if (w == 0.0) continue;
            for (std::size_t oy = 0; oy < OH; ++oy) {
              const long long iy =
                  static_cast<long long>(oy * stride + ky) - pad;
              if (iy < 0 || iy >= static_cast<long long>(H)) continue;
              const double* irow = iplane + iy * W;
              double* orow = oplane + oy * OW;
              // Valid ox range so that ix = ox*stride + kx - pad stays in
              // [0, W): solved once per row instead of testing per element.
              const long long off = static_cast<long long>(kx) - pad;
              std::size_t ox_lo = 0;
              if (off < 0)
                ox_lo = static_cast<std::size_t>((-off + stride - 1) / stride);
              long long hi_num = static_cast<long long>(W) - 1 - off;
              if (hi_num < 0) continue;
              std::size_t ox_hi = std::min<std::size_t>(
                  OW - 1, static_cast<std::size_t>(hi_num / stride));
              if (stride == 1) {
                const double* ip = irow + off + ox_lo;
                for (std::size_t ox = ox_lo; ox <= ox_hi; ++ox, ++ip)
                  orow[ox] += w * *ip;
              } else {
                for (std::size_t ox = ox_lo; ox <= ox_hi; ++ox)
                  orow[ox] += w * irow[ox * stride + off];
              }
            }
          }
        }
      }
    }
  });
  return out;
}

LayerGrads conv2d_backward(const Tensor& input, const Tensor& weights,
                           int stride, int pad, const Tensor& output_grad) {
  require_chw(input, "conv2d_backward");
  const std::size_t C = input.dim(0), H = input.dim(1), W = input.dim(2);
  const std::size_t K = weights.dim(0), kh = weights.dim(2), kw = weights.dim(3);
  DISC_CHECK(weights.dim(1) == C, "conv2d_backward: channel mismatch");
  const std::size_t OH = conv_out_size(H, kh, stride, pad);
  const std::size_t OW = conv_out_size(W, kw, stride, pad);
  DISC_CHECK(output_grad.rank() == 3 && output_grad.dim(0) == K &&
                 output_grad.dim(1) == OH && output_grad.dim(2) == OW,
             "conv2d_backward: output_grad shape mismatch");

  LayerGrads grads;
  grads.input_grad = Tensor({C, H, W});
  grads.param_grads.emplace_back(weights.shape);
  grads.param_grads.emplace_back(Tensor({K}));
  Tensor& wgrad = grads.param_grads[0];
  Tensor& bgrad = grads.param_grads[1];

  const double* in = input.data.data();
  const double* og = output_grad.data.data();
  const double* wt = weights.data.data();

  // Weight and bias gradients: each filter k is written by exactly one task.
  parallel_for(K, [&](std::size_t k0, std::size_t k1) {
    for (std::size_t k = k0; k < k1; ++k) {
      const double* gplane = og + k * OH * OW;
      double bsum = 0.0;
      for (std::size_t i = 0; i < OH * OW; ++i) bsum += gplane[i];
      bgrad[k] = bsum;
      for (std::size_t c = 0; c < C; ++c) {
        const double* iplane = in + c * H * W;
        double* wplane = wgrad.data.data() + (k * C + c) * kh * kw;
        for (std::size_t ky = 0; ky < kh; ++ky) {
          for (std::size_t kx = 0; kx < kw; ++kx) {
            const long long off = static_cast<long long>(kx) - pad;
            double acc = 0.0;
            for (std::size_t oy = 0; oy < OH; ++oy) {
              const long long iy =
                  static_cast<long long>(oy * stride + ky) - pad;
              if (iy < 0 || iy >= static_cast<long long>(H)) continue;
              const double* irow = iplane + iy * W;
              const double* grow = gplane + oy * OW;
              std::size_t ox_lo = 0;
              if (off < 0)
                ox_lo = static_cast<std::size_t>((-off + stride - 1) / stride);
              long long hi_num = static_cast<long long>(W) - 1 - off;
              if (hi_num < 0) continue;
              std::size_t ox_hi = std::min<std::size_t>(
                  OW - 1, static_cast<std::size_t>(hi_num / stride));
              if (stride == 1) {
                const double* ip = irow + off + ox_lo;
                for (std::size_t ox = ox_lo; ox <= ox_hi; ++ox, ++ip)
                  acc += grow[ox] * *ip;
              } else {
                for (std::size_t ox = ox_lo; ox <= ox_hi; ++ox)
                  acc += grow[ox] * irow[ox * stride + off];
              }
            }
            wplane[ky * kw + kx] = acc;
          }
        }
      }
    }
  });

  // Input gradient: each input channel c is written by exactly one task.
  double* ig = grads.input_grad.data.data();
  parallel_for(C, [&](std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
      double* iplane = ig + c * H * W;
      for (std::size_t k = 0; k < K; ++k) {
        const double* gplane = og + k * OH * OW;
        const double* wplane = wt + (k * C + c) * kh * kw;
        for (std::size_t ky = 0; ky < kh; ++ky) {
          for (std::size_t kx = 0; kx < kw; ++kx) {
            const double w = wplane[ky * kw + kx];
            if (w == 0.0) continue;
            const long long off = static_cast<long long>(kx) - pad;
            for (std::size_t oy = 0; oy < OH; ++oy) {
              const long long iy =
                  static_cast<long long>(oy * stride + ky) - pad;
              if (iy < 0 || iy >= static_cast<long long>(H)) continue;
              double* irow = iplane + iy * W;
              const double* grow = gplane + oy * OW;
              std::size_t ox_lo = 0;
              if (off < 0)
                ox_lo = static_cast<std::size_t>((-off + stride - 1) / stride);
              long long hi_num = static_cast<long long>(W) - 1 - off;
              if (hi_num < 0) continue;
              std::size_t ox_hi = std::min<std::size_t>(
                  OW - 1, static_cast<std::size_t>(hi_num / stride));
              if (stride == 1) {
                double* ip = irow + off + ox_lo;
                for (std::size_t ox = ox_lo; ox <= ox_hi; ++ox, ++ip)
                  *ip += w * grow[ox];
              } else {
                for (std::size_t ox = ox_lo; ox <= ox_hi; ++ox)
                  irow[ox * stride + off] += w * grow[ox];
              }
            }
          }
        }
      }
    }
  });
  return grads;
}

Tensor relu_forward(const Tensor& x) {
  Tensor out(x.shape);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] > 0.0 ? x[i] : 0.0;
  return out;
}

Tensor relu_backward(const Tensor& x, const Tensor& output_grad) {
  DISC_CHECK(x.same_shape(output_grad), "relu_backward: shape mismatch");
  Tensor out(x.shape);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] > 0.0 ? output_grad[i] : 0.0;
  return out;
}

MaxPoolResult maxpool_forward(const Tensor& x, int kernel, int stride) {
  require_chw(x, "maxpool_forward");
  DISC_CHECK(kernel >= 1 && stride >= 1, "maxpool_forward: bad kernel/stride");
  const std::size_t C = x.dim(0), H = x.dim(1), W = x.dim(2);
  const std::size_t k = static_cast<std::size_t>(kernel);
  DISC_CHECK(k <= H && k <= W, "maxpool_forward: kernel exceeds spatial dims");
  const std::size_t OH = (H - k) / stride + 1;
  const std::size_t OW = (W - k) / stride + 1;

  MaxPoolResult res;
  res.output = Tensor({C, OH, OW});
  res.argmax.assign(C * OH * OW, 0);
  for (std::size_t c = 0; c < C; ++c) {
    const double* plane = x.data.data() + c * H * W;
    for (std::size_t oy = 0; oy < OH; ++oy) {
      for (std::size_t ox = 0; ox < OW; ++ox) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t ky = 0; ky < k; ++ky) {
          const std::size_t iy = oy * stride + ky;
          for (std::size_t kx = 0; kx < k; ++kx) {
            const std::size_t ix = ox * stride + kx;
            const double v = plane[iy * W + ix];
            if (v > best) {  // strict: ties keep the lowest flat index
              best = v;
              best_idx = c * H * W + iy * W + ix;
            }
          }
        }
        const std::size_t oi = (c * OH + oy) * OW + ox;
        res.output[oi] = best;
        res.argmax[oi] = best_idx;
      }
    }
  }
  return res;
}

Tensor maxpool_backward(const std::vector<std::size_t>& argmax,
                        const Tensor& output_grad,
                        const std::vector<std::size_t>& input_shape) {
  DISC_CHECK(argmax.size() == output_grad.size(),
             "maxpool_backward: argmax/grad size mismatch");
  Tensor out(input_shape);
  for (std::size_t i = 0; i < argmax.size(); ++i)
    out[argmax[i]] += output_grad[i];
  return out;
}

Tensor lrn_forward(const Tensor& x, const LrnParams& p) {
  require_chw(x, "lrn_forward");
  const std::size_t C = x.dim(0), HW = x.dim(1) * x.dim(2);
  const long long half = p.n / 2;
  Tensor out(x.shape);
  for (std::size_t i = 0; i < HW; ++i) {
    for (std::size_t c = 0; c < C; ++c) {
      const long long lo = std::max<long long>(0, static_cast<long long>(c) - half);
      const long long hi =
          std::min<long long>(C - 1, static_cast<long long>(c) + half);
      double sum_sq = 0.0;
      for (long long j = lo; j <= hi; ++j) {
        const double v = x[static_cast<std::size_t>(j) * HW + i];
        sum_sq += v * v;
      }
      const double denom = std::pow(p.k + p.alpha * sum_sq, p.beta);
      out[c * HW + i] = x[c * HW + i] / denom;
    }
  }
  return out;
}

Tensor lrn_backward(const Tensor& x, const LrnParams& p,
                    const Tensor& output_grad) {
  DISC_CHECK(x.same_shape(output_grad), "lrn_backward: shape mismatch");
  const std::size_t C = x.dim(0), HW = x.dim(1) * x.dim(2);
  const long long half = p.n / 2;
  Tensor out(x.shape);
  // d y_c / d x_i = delta_ci * S_c^-beta
  //              - 2 alpha beta x_c x_i S_c^(-beta-1) for i in window(c).
  std::vector<double> scale(C), y_over_s(C);
  for (std::size_t i = 0; i < HW; ++i) {
    for (std::size_t c = 0; c < C; ++c) {
      const long long lo = std::max<long long>(0, static_cast<long long>(c) - half);
      const long long hi =
          std::min<long long>(C - 1, static_cast<long long>(c) + half);
      double sum_sq = 0.0;
      for (long long j = lo; j <= hi; ++j) {
        const double v = x[static_cast<std::size_t>(j) * HW + i];
        sum_sq += v * v;
      }
      const double s = p.k + p.alpha * sum_sq;
      scale[c] = std::pow(s, -p.beta);
      y_over_s[c] = x[c * HW + i] * std::pow(s, -p.beta - 1.0);
    }
    for (std::size_t c = 0; c < C; ++c) {
      double g = output_grad[c * HW + i] * scale[c];
      const long long lo = std::max<long long>(0, static_cast<long long>(c) - half);
      const long long hi =
          std::min<long long>(C - 1, static_cast<long long>(c) + half);
      double cross = 0.0;
      for (long long j = lo; j <= hi; ++j)
        cross += output_grad[static_cast<std::size_t>(j) * HW + i] *
                 y_over_s[static_cast<std::size_t>(j)];
      out[c * HW + i] =
          g - 2.0 * p.alpha * p.beta * x[c * HW + i] * cross;
    }
  }
  return out;
}

Tensor fully_connected_forward(const Tensor& x, const Tensor& weights,
                               const Tensor& bias) {
  DISC_CHECK(weights.rank() == 2, "fully_connected_forward: W must be M x D");
  const std::size_t M = weights.dim(0), D = weights.dim(1);
  DISC_CHECK(x.size() == D, "fully_connected_forward: input length "
                                << x.size() << " != " << D);
  DISC_CHECK(bias.size() == M, "fully_connected_forward: bias length mismatch");
  Tensor out({M});
  const double* w = weights.data.data();
  parallel_for(M, [&](std::size_t m0, std::size_t m1) {
    for (std::size_t m = m0; m < m1; ++m) {
      const double* row = w + m * D;
      double acc = bias[m];
      for (std::size_t d = 0; d < D; ++d) acc += row[d] * x[d];
      out[m] = acc;
    }
  });
  return out;
}

LayerGrads fully_connected_backward(const Tensor& x, const Tensor& weights,
                                    const Tensor& output_grad) {
  const std::size_t M = weights.dim(0), D = weights.dim(1);
  DISC_CHECK(x.size() == D && output_grad.size() == M,
             "fully_connected_backward: shape mismatch");
  LayerGrads grads;
  grads.input_grad = Tensor(x.shape);
  grads.param_grads.emplace_back(weights.shape);
  grads.param_grads.emplace_back(Tensor({M}));
  Tensor& wgrad = grads.param_grads[0];
  Tensor& bgrad = grads.param_grads[1];

  const double* w = weights.data.data();
  double* wg = wgrad.data.data();
  for (std::size_t m = 0; m < M; ++m) {
    const double g = output_grad[m];
    bgrad[m] = g;
    double* wrow = wg + m * D;
    for (std::size_t d = 0; d < D; ++d) wrow[d] = g * x[d];
  }
  double* ig = grads.input_grad.data.data();
  for (std::size_t m = 0; m < M; ++m) {
    const double g = output_grad[m];
    const double* wrow = w + m * D;
    for (std::size_t d = 0; d < D; ++d) ig[d] += g * wrow[d];
  }
  return grads;
}

Tensor bilinear_resize(const Tensor& x, std::size_t out_h, std::size_t out_w) {
  DISC_CHECK(x.rank() == 2 || x.rank() == 3,
             "bilinear_resize expects H x W or C x H x W");
  DISC_CHECK(out_h >= 1 && out_w >= 1, "bilinear_resize: bad output size");
  const bool has_c = x.rank() == 3;
  const std::size_t C = has_c ? x.dim(0) : 1;
  const std::size_t H = x.dim(has_c ? 1 : 0), W = x.dim(has_c ? 2 : 1);

  Tensor out(has_c ? std::vector<std::size_t>{C, out_h, out_w}
                   : std::vector<std::size_t>{out_h, out_w});
  const double sy = static_cast<double>(H) / out_h;
  const double sx = static_cast<double>(W) / out_w;
  for (std::size_t c = 0; c < C; ++c) {
    const double* plane = x.data.data() + c * H * W;
    double* oplane = out.data.data() + c * out_h * out_w;
    for (std::size_t oy = 0; oy < out_h; ++oy) {
      double fy = (oy + 0.5) * sy - 0.5;
      fy = std::clamp(fy, 0.0, static_cast<double>(H - 1));
      const std::size_t y0 = static_cast<std::size_t>(fy);
      const std::size_t y1 = std::min(y0 + 1, H - 1);
      const double wy = fy - y0;
      for (std::size_t ox = 0; ox < out_w; ++ox) {
        double fx = (ox + 0.5) * sx - 0.5;
        fx = std::clamp(fx, 0.0, static_cast<double>(W - 1));
        const std::size_t x0 = static_cast<std::size_t>(fx);
        const std::size_t x1 = std::min(x0 + 1, W - 1);
        const double wx = fx - x0;
        const double top = plane[y0 * W + x0] * (1 - wx) + plane[y0 * W + x1] * wx;
        const double bot = plane[y1 * W + x0] * (1 - wx) + plane[y1 * W + x1] * wx;
        oplane[oy * out_w + ox] = top * (1 - wy) + bot * wy;
      }
    }
  }
  return out;
}

}  // namespace disc
