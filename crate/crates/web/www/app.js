import init, { analyze, fidelity_trace, spectrum } from "./pkg/qwalk_web.js";

const $ = (id) => document.getElementById(id);

function fail(e) {
  $("summary").innerHTML = "";
  $("out").innerHTML = `<span class="err">${String(e.message || e)}</span>`;
}

function draw(points) {
  const c = $("plot");
  const ctx = c.getContext("2d");
  const w = c.width, h = c.height, pad = 24;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#ccc";
  ctx.strokeRect(pad, pad / 2, w - 2 * pad, h - 1.5 * pad);
  const tMax = points[points.length - 2] || 1;
  const x = (t) => pad + (t / tMax) * (w - 2 * pad);
  const y = (f) => h - pad - f * (h - 1.5 * pad);
  ctx.fillStyle = "#666";
  ctx.fillText("1", 4, y(1) + 4);
  ctx.fillText("0", 4, y(0) + 4);
  ctx.fillText(tMax.toFixed(3), w - pad - 30, h - 6);
  ctx.strokeStyle = "#1f5fbf";
  ctx.beginPath();
  for (let i = 0; i < points.length; i += 2) {
    const px = x(points[i]), py = y(points[i + 1]);
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  }
  ctx.stroke();
}

function runTrace() {
  try {
    const pts = fidelity_trace($("expr").value, $("va").value, $("vb").value,
      Number($("tend").value), Number($("steps").value));
    draw(pts);
    let best = 0;
    for (let i = 3; i < pts.length; i += 2) if (pts[i] > pts[best + 1]) best = i - 1;
    $("trace-info").textContent = `max fidelity ${pts[best + 1].toFixed(9)} at t = ${pts[best].toFixed(6)}`;
  } catch (e) {
    fail(e);
  }
}

function runAnalyze() {
  try {
    const r = JSON.parse(analyze($("expr").value, $("va").value, $("vb").value, Number($("copies").value)));
    const rows = [
      ["pair", `${r.pair[0].label} / ${r.pair[1].label}`],
      ["strongly cospectral", r.strong_cospectral],
      ["periodic", r.periodic.occurs ? (r.periodic.exact_period || r.periodic.period || "constant") : "no"],
      ["PST", r.pst.occurs ? (r.pst.exact_time || r.pst.time) : `no (${r.pst.obstruction})`],
      ["PGST", r.pgst.verdict + (r.pgst.heuristic ? " (heuristic)" : "")],
      ["checks", r.consistency.every((c) => c.passed) ? "all pass" : "FAILURES"],
    ];
    $("summary").innerHTML = "<table>" + rows.map(([k, v]) => `<tr><th>${k}</th><td>${v}</td></tr>`).join("") + "</table>";
    $("out").textContent = JSON.stringify(r, null, 2);
  } catch (e) {
    fail(e);
  }
}

function runSpectrum() {
  try {
    const s = JSON.parse(spectrum($("expr").value));
    $("summary").textContent = `${s.graph}: ${s.vertices} vertices`;
    $("out").textContent = s.eigenvalues
      .map((e) => `${(e.form || e.value.toFixed(12)).padEnd(18)} x${e.multiplicity}`)
      .join("\n");
  } catch (e) {
    fail(e);
  }
}

await init();
$("run-trace").onclick = runTrace;
$("run-analyze").onclick = runAnalyze;
$("run-spectrum").onclick = runSpectrum;
runTrace();
