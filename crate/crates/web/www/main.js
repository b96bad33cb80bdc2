import init, { RingsDemo, atanh_curve, atanh_penalty, class_weighting } from './pkg/dldah_web.js';

const EXTENT = 4.0;
const GRID = 60;
const COLORS = [[70, 110, 220], [230, 120, 40]];

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function drawRings(canvas, demo, result) {
  const ctx = canvas.getContext('2d');
  const size = canvas.width;
  const cell = size / GRID;
  const grid = result.grid;
  for (let k = 0; k < grid.length; k++) {
    const [r, g, b] = COLORS[grid[k]];
    ctx.fillStyle = `rgba(${r},${g},${b},0.25)`;
    ctx.fillRect((k % GRID) * cell, Math.floor(k / GRID) * cell, cell + 1, cell + 1);
  }
  const pts = demo.points();
  const labels = demo.labels();
  const toPx = (v) => (v + EXTENT) / (2 * EXTENT) * size;
  for (let j = 0; j < labels.length; j++) {
    const [r, g, b] = COLORS[labels[j]];
    ctx.fillStyle = `rgb(${r},${g},${b})`;
    ctx.fillRect(toPx(pts[2 * j]) - 1.5, size - toPx(pts[2 * j + 1]) - 1.5, 3, 3);
  }
}

function runRings() {
  const demo = new RingsDemo(num('r-seed'), num('r-n'), num('r-noise'));
  const linear = demo.run_ldah(GRID);
  drawRings($('r-linear'), demo, linear);
  $('r-linear-cap').textContent = `linear, ${linear.bits} bits: MAP ${linear.map.toFixed(3)}`;
  const deep = demo.run_dldah(num('r-bits'), num('r-epochs'), GRID);
  drawRings($('r-deep'), demo, deep);
  $('r-deep-cap').textContent = `deep, ${deep.bits} bits: MAP ${deep.map.toFixed(3)}`;
  linear.free();
  deep.free();
  demo.free();
}

function drawCurve() {
  const alpha = num('a-alpha');
  const nu = num('a-nu');
  $('a-alpha-v').textContent = alpha.toFixed(1);
  $('a-penalty').textContent = `penalty per bit: ${atanh_penalty(alpha, nu).toExponential(3)}`;

  const canvas = $('a-plot');
  const ctx = canvas.getContext('2d');
  const { width: w, height: h } = canvas;
  const range = 3;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = '#bbb';
  ctx.beginPath();
  ctx.moveTo(0, h / 2); ctx.lineTo(w, h / 2);
  ctx.moveTo(w / 2, 0); ctx.lineTo(w / 2, h);
  ctx.stroke();

  // sign function for reference
  ctx.strokeStyle = '#999';
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(0, h * 0.9); ctx.lineTo(w / 2, h * 0.9); ctx.lineTo(w / 2, h * 0.1); ctx.lineTo(w, h * 0.1);
  ctx.stroke();
  ctx.setLineDash([]);

  const ys = atanh_curve(alpha, range, w);
  ctx.strokeStyle = '#c33';
  ctx.lineWidth = 2;
  ctx.beginPath();
  ys.forEach((y, i) => {
    const py = h / 2 - y * h * 0.4;
    i === 0 ? ctx.moveTo(i, py) : ctx.lineTo(i, py);
  });
  ctx.stroke();
  ctx.lineWidth = 1;
}

function runWeighting() {
  const small = num('w-small');
  const large = num('w-large');
  const v = class_weighting(small, large, num('w-sep'), num('w-seed'));
  const share = (a, b) => (100 * a / (a + b)).toFixed(1) + '%';
  $('w-table').innerHTML = `
    <tr><th></th><th>small (${small})</th><th>large (${large})</th><th>total</th><th>small share</th></tr>
    <tr><th>plain labels</th><td>${v[2].toFixed(2)}</td><td>${v[3].toFixed(2)}</td><td>${v[0].toFixed(2)}</td><td>${share(v[2], v[3])}</td></tr>
    <tr><th>whitened labels</th><td>${v[4].toFixed(4)}</td><td>${v[5].toFixed(4)}</td><td>${v[1].toFixed(4)}</td><td>${share(v[4], v[5])}</td></tr>`;
}

function guarded(fn) {
  return () => {
    try {
      fn();
      $('status').textContent = '';
    } catch (e) {
      $('status').textContent = String(e.message ?? e);
    }
  };
}

await init();
$('status').textContent = '';
$('r-run').addEventListener('click', guarded(runRings));
$('a-alpha').addEventListener('input', guarded(drawCurve));
$('a-nu').addEventListener('input', guarded(drawCurve));
$('w-run').addEventListener('click', guarded(runWeighting));
guarded(drawCurve)();
guarded(runWeighting)();
