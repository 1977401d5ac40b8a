import init, { Demo } from "./pkg/lr_grade_web.js";

const SIZE = 512;
const PAD = 8;
const PRESETS = ["bean", "diagonal", "antidiagonal", "triangle", "circle", "square"];

const $ = (id) => document.getElementById(id);
let demo;

function draw() {
  $("mesh").innerHTML = demo.svg();
  $("stats").textContent = `${demo.boxes()} boxes, ${demo.bsplines()} LR B-splines`;
}

function reset() {
  demo = new Demo(+$("p1").value, +$("p2").value, $("variant").value, SIZE);
  $("info").textContent = "";
  $("report").textContent = "";
  draw();
}

function attempt(f) {
  try {
    f();
  } catch (e) {
    $("info").textContent = String(e);
  }
  draw();
}

function unitCoords(ev) {
  const r = $("mesh").firstElementChild.getBoundingClientRect();
  const scale = r.width / (SIZE + 2 * PAD);
  const x = (ev.clientX - r.left) / scale - PAD;
  const y = (ev.clientY - r.top) / scale - PAD;
  return [x / SIZE, 1 - y / SIZE];
}

await init();
for (const p of PRESETS) {
  $("preset").append(new Option(p));
}
$("reset").onclick = reset;
$("curve").onclick = () => attempt(() => demo.refine_curve($("preset").value));
$("verify").onclick = () => {
  const r = JSON.parse(demo.verify(1000, 0));
  $("report").textContent = JSON.stringify(r, null, 1);
  $("info").textContent = r.pass ? "all checks pass" : "verification failed";
};
$("mesh").onclick = (ev) => {
  const [x, y] = unitCoords(ev);
  if (x < 0 || x > 1 || y < 0 || y > 1) return;
  if (ev.shiftKey) {
    $("info").textContent = demo.inspect_at(x, y);
    draw();
  } else {
    attempt(() => demo.refine_at(x, y));
  }
};
reset();
