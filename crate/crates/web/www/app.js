import init, { classifyJson, formJson, equivalenceJson } from "./pkg/densitymod_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guarded(sum, fn) {
  try {
    fn();
  } catch (e) {
    sum.textContent = String(e);
    sum.className = "summary bad";
  }
}

function onClassify() {
  const sum = $("c-sum");
  guarded(sum, () => {
    const r = JSON.parse(classifyJson(num("c-n"), $("c-l").value, num("c-d")));
    const sets = r.invariant_sets.map((s) => s.description).join("; ") || "none";
    const unit = r.unitarity.map((u) => `${u.label}: ${u.unitary ? "unitary" : "not unitary"}`).join("; ");
    sum.className = r.agreement ? "summary" : "summary bad";
    sum.textContent = `${r.simple ? "simple" : "reducible"}; invariant sets: ${sets}; ${unit}`;
    $("c-out").textContent = JSON.stringify(r, null, 2);
  });
}

function onForm() {
  const sum = $("f-sum");
  guarded(sum, () => {
    const r = JSON.parse(formJson(num("f-n"), $("f-l").value, num("f-d")));
    sum.className = "summary";
    sum.textContent = r.kind === "weights"
      ? `invariant form found; ${r.unitary ? "positive definite" : "indefinite"}`
      : `no unique invariant form (${r.kind}, solution dimension ${r.solution_dim})`;
    const rows = r.weights.map(([l, w]) => `<tr><td>${l}</td><td>${w}</td></tr>`).join("");
    $("f-table").innerHTML = rows ? `<table><tr><th>K-type</th><th>weight</th></tr>${rows}</table>` : "";
  });
}

function onEquivalence() {
  const sum = $("e-sum");
  guarded(sum, () => {
    const r = JSON.parse(equivalenceJson(num("e-n"), $("e-l").value, num("e-g"), num("e-s")));
    const worst = Math.max(r.max_correspondence, r.max_intertwining, r.max_chain);
    sum.className = r.passed ? "summary" : "summary bad";
    sum.textContent = `${r.passed ? "PASS" : "FAIL"}: max residual ${worst.toExponential(2)} at ν = ${r.nu}; ` +
      `control at ν = ${r.control.nu} gives ${r.control.intertwining.toExponential(2)}`;
    $("e-out").textContent = JSON.stringify(r.generators, null, 2);
  });
}

await init();
$("c-go").addEventListener("click", onClassify);
$("f-go").addEventListener("click", onForm);
$("e-go").addEventListener("click", onEquivalence);
onClassify();
onForm();
