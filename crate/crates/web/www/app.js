import init, { simulate, solve, lemmas } from "./pkg/zforce_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let current = null;

function setStatus(text, isError = false) {
  $("status").textContent = text;
  $("status").className = isError ? "error" : "";
}

function call(fn, ...args) {
  try {
    return JSON.parse(fn(...args));
  } catch (err) {
    setStatus(String(err), true);
    return null;
  }
}

function el(name, attrs, parent) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent.appendChild(node);
  return node;
}

// vertices on a circle; black = initial or forced by step, red = forced at step
function draw(graph, black, fresh, forceEdge) {
  const svg = $("view");
  svg.replaceChildren();
  const r = graph.n > 1 ? 170 : 0;
  const pos = Array.from({ length: graph.n }, (_, i) => {
    const a = (2 * Math.PI * i) / graph.n - Math.PI / 2;
    return [r * Math.cos(a), r * Math.sin(a)];
  });
  for (const [u, v] of graph.edges) {
    const hot = forceEdge && ((forceEdge[0] === u && forceEdge[1] === v) || (forceEdge[0] === v && forceEdge[1] === u));
    el("line", { x1: pos[u][0], y1: pos[u][1], x2: pos[v][0], y2: pos[v][1], class: hot ? "force" : "" }, svg);
  }
  const radius = graph.n > 30 ? 8 : 12;
  pos.forEach(([x, y], v) => {
    const cls = v === fresh ? "fresh" : black.has(v) ? "black" : "";
    el("circle", { cx: x, cy: y, r: radius, class: cls }, svg);
    el("text", { x, y }, svg).textContent = v;
  });
}

function showStep(k) {
  const sim = current;
  const black = new Set(sim.initial);
  for (const e of sim.events.slice(0, k)) black.add(e.forced);
  const last = k > 0 ? sim.events[k - 1] : null;
  draw(sim.graph, black, last ? last.forced : null, last ? [last.forcer, last.forced] : null);
  $("steplabel").textContent = last
    ? `step ${k} of ${sim.events.length}: ${last.forcer} forces ${last.forced}`
    : `initial set, ${sim.events.length} forces follow`;
}

function runForcing() {
  const sim = call(simulate, $("graph").value, $("initial").value);
  if (!sim) return;
  current = sim;
  const n = sim.graph.n;
  setStatus(sim.zero_forcing
    ? `Zero forcing set: all ${n} vertices turn black in ${sim.events.length} forces.`
    : `Not zero forcing: the closure stalls at ${sim.closure.length} of ${n} vertices.`);
  $("stepper").hidden = false;
  $("step").max = sim.events.length;
  $("step").value = sim.events.length;
  $("detail").replaceChildren();
  showStep(sim.events.length);
}

function runSolve() {
  setStatus("Searching...");
  // let the status paint before the search blocks the thread
  setTimeout(() => {
    const sol = call(solve, $("graph").value, undefined);
    if (!sol) return;
    const b = sol.bounds;
    const z = sol.exact ? `Z(G) = ${sol.lower}` : `${sol.lower} ≤ Z(G) ≤ ${sol.upper} (search budget reached)`;
    const girth = b.girth === "acyclic" ? "acyclic" : `girth ${b.girth}`;
    const bound = b.bound === null ? "the girth bound does not apply" : `bound δ + (δ−2)(g−3) = ${b.bound}`;
    setStatus(`${z}; ${girth}, δ = ${b.min_degree}, ${bound}.`);
    $("initial").value = sol.witness.join(",");
    current = call(simulate, $("graph").value, $("initial").value);
    if (!current) return;
    $("stepper").hidden = false;
    $("step").max = current.events.length;
    $("step").value = 0;
    showStep(0);
    const pre = document.createElement("pre");
    pre.textContent = `witness: {${sol.witness.join(", ")}}\nsearch nodes: ${sol.nodes_explored}\ngraph6: ${sol.graph.graph6}`;
    $("detail").replaceChildren(pre);
  }, 10);
}

function runLemmas() {
  const report = call(lemmas, $("graph").value, $("initial").value);
  if (!report) return;
  const h = report.hypothesis;
  setStatus(`${report.summary.pass} passed, ${report.summary.fail} failed, ${report.summary.inapplicable} not applicable.`
    + ` |S| = ${h.set_size} vs threshold ${h.threshold}.`, report.summary.fail > 0);
  const table = document.createElement("table");
  table.innerHTML = "<tr><th>check</th><th>result</th><th>instances</th></tr>";
  for (const c of report.checks) {
    const row = table.insertRow();
    row.insertCell().textContent = c.name;
    const cell = row.insertCell();
    cell.textContent = c.status + (c.reason ? `: ${c.reason}` : "") + (c.message ? `: ${c.message}` : "");
    cell.className = c.status;
    row.insertCell().textContent = c.instances;
  }
  const pre = document.createElement("pre");
  pre.textContent = JSON.stringify({ forcers: report.forcers, components: report.components, hypothesis: h }, null, 1);
  $("detail").replaceChildren(table, pre);
}

await init();
$("run").addEventListener("click", runForcing);
$("solve").addEventListener("click", runSolve);
$("lemmas").addEventListener("click", runLemmas);
$("step").addEventListener("input", (e) => showStep(Number(e.target.value)));
runForcing();
