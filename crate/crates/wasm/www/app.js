import init, { factor_tree, exact_distribution, monte_carlo } from "./pkg/lyndon_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "out err" : "out";
}

function clear(canvas) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.font = "12px ui-monospace, monospace";
  return ctx;
}

// Plot area with axes from 0 to 1 on x and 0 to yMax on y.
function frame(ctx, canvas, yMax, yLabel) {
  const box = { left: 50, right: canvas.width - 15, top: 15, bottom: canvas.height - 30 };
  const x = (t) => box.left + t * (box.right - box.left);
  const y = (v) => box.bottom - (v / yMax) * (box.bottom - box.top);
  ctx.strokeStyle = "#888";
  ctx.fillStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(box.left, box.top);
  ctx.lineTo(box.left, box.bottom);
  ctx.lineTo(box.right, box.bottom);
  ctx.stroke();
  for (const t of [0, 0.25, 0.5, 0.75, 1]) {
    ctx.fillText(String(t), x(t) - 8, box.bottom + 16);
  }
  for (const v of [0, yMax / 2, yMax]) {
    ctx.fillText(v.toFixed(2), 4, y(v) + 4);
  }
  ctx.fillText(yLabel, box.left + 8, box.top + 4);
  return { x, y, box };
}

// Tidy layout: leaves get consecutive columns, parents sit above the middle.
function drawTree(canvas, root) {
  const ctx = clear(canvas);
  const leaves = [];
  const nodes = [];
  const place = (node, depth) => {
    const item = { node, depth };
    if (node.u) {
      const l = place(node.u, depth + 1);
      const r = place(node.v, depth + 1);
      item.col = (l.col + r.col) / 2;
      item.kids = [l, r];
    } else {
      item.col = leaves.length;
      leaves.push(item);
    }
    nodes.push(item);
    return item;
  };
  place(root, 0);
  const depth = Math.max(...nodes.map((n) => n.depth));
  const dx = (canvas.width - 40) / Math.max(leaves.length, 1);
  const dy = (canvas.height - 40) / Math.max(depth, 1);
  const px = (n) => 20 + dx * (n.col + 0.5);
  const py = (n) => 20 + dy * n.depth;
  ctx.strokeStyle = "#aaa";
  for (const n of nodes) {
    for (const k of n.kids || []) {
      ctx.beginPath();
      ctx.moveTo(px(n), py(n));
      ctx.lineTo(px(k), py(k));
      ctx.stroke();
    }
  }
  ctx.textAlign = "center";
  ctx.fillStyle = "#222";
  for (const n of nodes) {
    const label = n.node.word.length > 12 ? n.node.word.slice(0, 11) + "…" : n.node.word;
    const w = ctx.measureText(label).width + 6;
    ctx.fillStyle = "#fff";
    ctx.fillRect(px(n) - w / 2, py(n) - 9, w, 14);
    ctx.fillStyle = n.node.u ? "#222" : "#1565c0";
    ctx.fillText(label, px(n), py(n) + 2);
  }
  ctx.textAlign = "start";
}

function runTree() {
  try {
    const v = JSON.parse(factor_tree($("tree-word").value, num("tree-q")));
    show("tree-out", `u = ${v.u}\nv = ${v.v}\nR = ${v.R}   r = ${v.r.toFixed(4)}   height = ${v.height}`);
    drawTree($("tree-canvas"), v.tree);
  } catch (e) {
    show("tree-out", String(e.message || e), true);
    clear($("tree-canvas"));
  }
}

function runExact() {
  try {
    const v = JSON.parse(exact_distribution(num("exact-n"), num("exact-q")));
    show(
      "exact-out",
      `${v.lyndon_count} Lyndon words\natom P(r = 1) = ${v.atom} = ${v.atom_value.toFixed(5)}   limit ${v.limit_atom.toFixed(5)}\n` +
        `mean r = ${v.mean.toFixed(5)}   limit ${v.limit_mean.toFixed(5)}\nblack: exact cdf, red: limit cdf`,
    );
    const canvas = $("exact-canvas");
    const ctx = clear(canvas);
    const { x, y } = frame(ctx, canvas, 1, "cdf");
    const step = (points, key, color) => {
      ctx.strokeStyle = color;
      ctx.beginPath();
      let prev = 0;
      ctx.moveTo(x(0), y(0));
      for (const p of points) {
        ctx.lineTo(x(p.x), y(prev));
        ctx.lineTo(x(p.x), y(p[key]));
        prev = p[key];
      }
      ctx.stroke();
    };
    step(v.points, "cdf", "#222");
    ctx.strokeStyle = "#c62828";
    ctx.beginPath();
    const q = v.q;
    for (let i = 0; i <= 200; i++) {
      const t = i / 200;
      const limit = t < 1 ? ((q - 1) / q) * t : 1;
      i === 0 ? ctx.moveTo(x(t), y(limit)) : ctx.lineTo(x(t), y(limit));
    }
    ctx.stroke();
  } catch (e) {
    show("exact-out", String(e.message || e), true);
    clear($("exact-canvas"));
  }
}

function runMonteCarlo() {
  const started = performance.now();
  try {
    const v = JSON.parse(monte_carlo(num("mc-n"), num("mc-q"), num("mc-samples"), BigInt(num("mc-seed"))));
    const ms = (performance.now() - started).toFixed(0);
    const dn = v.dn_ks === null ? "-" : v.dn_ks.toFixed(4);
    show(
      "mc-out",
      `${v.samples} draws in ${ms} ms (${v.generator}, seed ${v.seed})\n` +
        `atom frequency ${v.atom_freq.toFixed(4)}   limit ${v.limit_atom.toFixed(4)}\n` +
        `KS of r below 1 against uniform ${v.ks_continuous.toFixed(4)}   mean r ${v.mean.toFixed(4)} (limit ${v.limit_mean.toFixed(4)})\n` +
        `good words ${(100 * v.good_fraction).toFixed(1)}%   KS of d_n against uniform ${dn}\n` +
        `blue: density of r below 1, orange: density of d_n, line: uniform`,
    );
    const canvas = $("mc-canvas");
    const ctx = clear(canvas);
    const density = (counts) => {
      const total = counts.reduce((a, b) => a + b, 0) || 1;
      return counts.map((c) => (c * v.bins) / total);
    };
    const r = density(v.r_histogram);
    const d = density(v.dn_histogram);
    const yMax = Math.max(2, ...r, ...d);
    const { x, y } = frame(ctx, canvas, yMax, "density");
    const bars = (values, color, offset) => {
      ctx.fillStyle = color;
      const w = 1 / v.bins;
      values.forEach((h, i) => {
        const x0 = x(i * w + offset * w);
        ctx.fillRect(x0, y(h), x(w / 2) - x(0) - 1, y(0) - y(h));
      });
    };
    bars(r, "rgba(21, 101, 192, 0.75)", 0);
    bars(d, "rgba(239, 108, 0, 0.75)", 0.5);
    ctx.strokeStyle = "#222";
    ctx.beginPath();
    ctx.moveTo(x(0), y(1));
    ctx.lineTo(x(1), y(1));
    ctx.stroke();
  } catch (e) {
    show("mc-out", String(e.message || e), true);
    clear($("mc-canvas"));
  }
}

function bind(formId, run) {
  $(formId).addEventListener("submit", (event) => {
    event.preventDefault();
    run();
  });
}

await init();
bind("tree-form", runTree);
bind("exact-form", runExact);
bind("mc-form", runMonteCarlo);
runTree();
runExact();
runMonteCarlo();
