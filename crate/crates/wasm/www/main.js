import init, { DExplorer, star_path_json, summary_json } from "./pkg/flipgraph_wasm.js";

const $ = (id) => document.getElementById(id);

function draw(canvas, state) {
  const ctx = canvas.getContext("2d");
  const size = canvas.width;
  const scale = size * 0.44;
  const tx = (x) => size / 2 + x * scale;
  const ty = (y) => size / 2 - y * scale;
  ctx.clearRect(0, 0, size, size);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.beginPath();
  state.polygon.forEach(([x, y], i) => (i ? ctx.lineTo(tx(x), ty(y)) : ctx.moveTo(tx(x), ty(y))));
  ctx.closePath();
  ctx.stroke();

  ctx.fillStyle = "#ddd";
  ctx.beginPath();
  ctx.arc(size / 2, size / 2, state.disk_radius * scale, 0, 2 * Math.PI);
  ctx.fill();

  ctx.lineWidth = 2;
  for (const chord of state.chords) {
    ctx.strokeStyle = !chord.central ? "#333" : chord.label.endsWith("L") ? "#2563eb" : "#dc2626";
    for (const [x1, y1, x2, y2] of chord.segments) {
      ctx.beginPath();
      ctx.moveTo(tx(x1), ty(y1));
      ctx.lineTo(tx(x2), ty(y2));
      ctx.stroke();
    }
  }

  ctx.fillStyle = "#222";
  ctx.font = "12px sans-serif";
  state.polygon.forEach(([x, y], i) => ctx.fillText(String(i), tx(x * 1.08) - 4, ty(y * 1.08) + 4));
}

function toModel(canvas, event) {
  const rect = canvas.getBoundingClientRect();
  const scale = canvas.width * 0.44;
  const x = (event.clientX - rect.left - canvas.width / 2) / scale;
  const y = -(event.clientY - rect.top - canvas.height / 2) / scale;
  return [x, y];
}

function setupExplorer() {
  const canvas = $("explorer");
  let explorer = null;

  const render = (json) => {
    const state = JSON.parse(json);
    draw(canvas, state);
    $("explorer-info").textContent =
      `${state.steps} flips so far; ${state.left_pairs} left and ${state.right_pairs} right central pairs; ` +
      `distance ${state.distance_to_left_star} to the left star, ${state.distance_to_right_star} to the right star.`;
    const list = $("explorer-flips");
    list.replaceChildren();
    for (const f of state.flips) {
      const li = document.createElement("li");
      li.textContent = `${f.removed} → ${f.added}`;
      const b = document.createElement("button");
      b.textContent = "flip";
      b.onclick = () => render(explorer.flip(f.removed_id));
      li.append(b);
      list.append(li);
    }
  };

  const restart = () => {
    explorer?.free();
    explorer = new DExplorer(Number($("explorer-n").value));
    render(explorer.state_json());
  };

  $("explorer-n").onchange = restart;
  $("explorer-left").onclick = () => { explorer.reset(false); render(explorer.state_json()); };
  $("explorer-right").onclick = () => { explorer.reset(true); render(explorer.state_json()); };
  $("explorer-undo").onclick = () => { explorer.undo(); render(explorer.state_json()); };
  canvas.onclick = (e) => render(explorer.flip_nearest(...toModel(canvas, e)));
  restart();
}

function setupPath() {
  let states = [];
  const show = (i) => {
    const s = states[i];
    draw($("path"), s);
    $("path-label").textContent = `${i} / ${states.length - 1}`;
    $("path-info").textContent =
      `${s.left_pairs} left, ${s.right_pairs} right central pairs; distance to right star ${s.distance_to_right_star}.`;
  };
  $("path-run").onclick = () => {
    try {
      states = JSON.parse(star_path_json(Number($("path-n").value), Number($("path-base").value)));
    } catch (err) {
      $("path-info").textContent = String(err);
      return;
    }
    const slider = $("path-step");
    slider.max = String(states.length - 1);
    slider.value = "0";
    show(0);
  };
  $("path-step").oninput = (e) => show(Number(e.target.value));
  $("path-run").onclick();
}

function setupSummary() {
  $("summary-run").onclick = () => {
    try {
      const s = JSON.parse(summary_json($("summary-type").value, Number($("summary-n").value)));
      $("summary-out").textContent = JSON.stringify(s, null, 2);
    } catch (err) {
      $("summary-out").textContent = String(err);
    }
  };
}

await init();
setupExplorer();
setupPath();
setupSummary();
