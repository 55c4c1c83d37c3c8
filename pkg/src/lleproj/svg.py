"""Minimal hand-written SVG scatter plots (no plotting dependency)."""
import numpy as np

# 8 stops sampled from the viridis colormap
VIRIDIS_STOPS = (
    (68, 1, 84),
    (70, 50, 126),
    (54, 92, 141),
    (39, 127, 142),
    (31, 161, 135),
    (74, 193, 109),
    (160, 218, 57),
    (253, 231, 37),
)


def ramp_color(u):
    """Hex colour for ``u`` in [0, 1] by linear interpolation between stops."""
    u = min(1.0, max(0.0, float(u)))
    pos = u * (len(VIRIDIS_STOPS) - 1)
    i = min(int(pos), len(VIRIDIS_STOPS) - 2)
    f = pos - i
    a, b = VIRIDIS_STOPS[i], VIRIDIS_STOPS[i + 1]
    rgb = [round(a[c] + f * (b[c] - a[c])) for c in range(3)]
    return "#%02x%02x%02x" % tuple(rgb)


def scatter_svg(Y, values=None, title="", size=480, margin=40, radius=2.5):
    """Render the first two rows of ``Y`` (d x N) as an SVG document.

    Points are coloured by ``values`` (e.g. arc length) on the viridis ramp;
    without values every point gets the first stop. A one-dimensional Y
    is drawn along the horizontal axis.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    x = Y[0]
    y = Y[1] if Y.shape[0] > 1 else np.zeros_like(x)
    n = x.size

    def scale(v):
        lo, hi = v.min(), v.max()
        span = hi - lo if hi > lo else 1.0
        return (v - lo) / span, lo, hi

    inner = size - 2 * margin
    ux, x_lo, x_hi = scale(x)
    uy, y_lo, y_hi = scale(y)
    px = margin + ux * inner
    py = size - margin - uy * inner
    if values is None:
        u = np.zeros(n)
    else:
        u, _, _ = scale(np.asarray(values, dtype=np.float64))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f'<text x="{size / 2:.1f}" y="{margin / 2:.1f}" font-family="sans-serif" '
                   f'font-size="13" text-anchor="middle">{safe}</text>')
    # axis lines along the bottom and left edges of the plotting area
    base = size - margin
    out.append(f'<line x1="{margin}" y1="{base}" x2="{size - margin}" y2="{base}" '
               f'stroke="#000000" stroke-width="1"/>')
    out.append(f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{base}" '
               f'stroke="#000000" stroke-width="1"/>')
    out.append(f'<text x="{margin}" y="{base + 15}" font-family="sans-serif" font-size="10">'
               f'{x_lo:.3g}</text>')
    out.append(f'<text x="{size - margin}" y="{base + 15}" font-family="sans-serif" '
               f'font-size="10" text-anchor="end">{x_hi:.3g}</text>')
    out.append(f'<text x="{margin - 4}" y="{base}" font-family="sans-serif" font-size="10" '
               f'text-anchor="end">{y_lo:.3g}</text>')
    out.append(f'<text x="{margin - 4}" y="{margin + 8}" font-family="sans-serif" '
               f'font-size="10" text-anchor="end">{y_hi:.3g}</text>')
    for i in range(n):
        out.append(f'<circle cx="{px[i]:.2f}" cy="{py[i]:.2f}" r="{radius}" '
                   f'fill="{ramp_color(u[i])}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
