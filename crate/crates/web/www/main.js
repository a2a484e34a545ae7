import init, { airy_curve, trajectory, symmetry_slice } from "./pkg/selfdual_web.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const BANDS = ["#eef5ff", "#eefaee", "#fff4e6", "#fff4e6"];

function rows(flat, width) {
  const out = [];
  for (let i = 0; i < flat.length; i += width) out.push(Array.from(flat.slice(i, i + width)));
  return out;
}

// series: [{xs, ys, color, dash}]
function plot(canvas, series, bands = []) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 34;
  ctx.clearRect(0, 0, w, h);
  const finite = (v) => Number.isFinite(v);
  const xs = series.flatMap((s) => s.xs), ys = series.flatMap((s) => s.ys).filter(finite);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);
  for (const b of bands) {
    ctx.fillStyle = b.color;
    ctx.fillRect(sx(b.from), pad, sx(b.to) - sx(b.from), h - 2 * pad);
  }
  ctx.strokeStyle = "#999";
  ctx.setLineDash([]);
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  if (y0 < 0 && y1 > 0) {
    ctx.beginPath(); ctx.moveTo(pad, sy(0)); ctx.lineTo(w - pad, sy(0)); ctx.stroke();
  }
  ctx.fillStyle = "#444";
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 14);
  ctx.fillText(x1.toPrecision(3), w - pad - 24, h - pad + 14);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash ? [5, 4] : []);
    ctx.beginPath();
    let pen = false;
    s.xs.forEach((x, i) => {
      const y = s.ys[i];
      if (!finite(y)) { pen = false; return; }
      pen ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y));
      pen = true;
    });
    ctx.stroke();
  }
}

function num(id) {
  return parseFloat(document.getElementById(id).value);
}

function guard(f) {
  return () => {
    document.getElementById("status").textContent = "";
    try { f(); } catch (e) { document.getElementById("status").textContent = e.message ?? String(e); }
  };
}

function drawAiry() {
  const r = rows(airy_curve(num("airy-lo"), num("airy-hi"), 600), 4);
  const bands = [];
  for (const [t, , , m] of r) {
    const last = bands[bands.length - 1];
    if (last && last.m === m) last.to = t;
    else bands.push({ m, from: t, to: t, color: BANDS[m] });
  }
  const ts = r.map((x) => x[0]);
  plot(document.getElementById("airy"), [
    { xs: ts, ys: r.map((x) => x[1]), color: COLORS[0] },
    { xs: ts, ys: r.map((x) => x[2]), color: COLORS[1], dash: true },
  ], bands);
}

function drawTrajectory() {
  const n = parseInt(document.getElementById("traj-n").value, 10);
  const r = rows(trajectory(n, num("traj-t"), 0.05), 2 * n + 3);
  const ts = r.map((x) => x[0]);
  const series = [];
  for (let i = 0; i < n; i++) {
    series.push({ xs: ts, ys: r.map((x) => x[1 + i]), color: COLORS[i] });
    series.push({ xs: ts, ys: r.map((x) => x[1 + n + i]), color: COLORS[i], dash: true });
  }
  plot(document.getElementById("traj"), series);
  const drift = Math.max(...r.map((x) => x[2 * n + 1]));
  const rank = Math.max(...r.map((x) => x[2 * n + 2]));
  document.getElementById("traj-note").textContent =
    `Solid: positions. Dashed: dual positions. Energy drift ${drift.toExponential(1)}, rank defect ${rank.toExponential(1)}, t reached ${ts[ts.length - 1]}.`;
}

function drawSymmetry() {
  const f = document.getElementById("sym-fn").value;
  const r = rows(symmetry_slice(f, num("sym-x2"), num("sym-z1"), num("sym-z2"), -2, 2, 401), 3);
  const ss = r.map((x) => x[0]);
  plot(document.getElementById("sym"), [
    { xs: ss, ys: r.map((x) => x[1]), color: COLORS[0] },
    { xs: ss, ys: r.map((x) => x[2]), color: COLORS[1], dash: true },
  ]);
  let gap = 0;
  for (const [, a, b] of r) {
    if (Number.isFinite(a) && Number.isFinite(b)) gap = Math.max(gap, Math.abs(a - b) / Math.max(Math.abs(a), Math.abs(b), 1e-300));
  }
  document.getElementById("sym-note").textContent =
    `Slice x = (s, x2): f(x, z) solid, f(z, x) dashed. Largest relative difference ${gap.toExponential(2)}.`;
}

await init();
for (const [id, f] of [["airy-go", drawAiry], ["traj-go", drawTrajectory], ["sym-go", drawSymmetry]]) {
  document.getElementById(id).addEventListener("click", guard(f));
}
guard(drawAiry)();
guard(drawTrajectory)();
guard(drawSymmetry)();
