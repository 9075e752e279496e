import init, { decompose, ladder, generate } from "./pkg/exact_jordan_web.js";

const $ = (id) => document.getElementById(id);

function el(tag, text, cls) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (cls) node.className = cls;
  return node;
}

function show(target, build) {
  target.replaceChildren();
  try {
    build(target);
  } catch (err) {
    target.append(el("p", String(err), "error"));
  }
}

function renderDecomposition(target, doc) {
  const blocks = doc.blocks.map((b) => `λ=${b.lambda} (${b.size})`).join(", ");
  target.append(el("p", `${doc.kind}: ${blocks}`));
  target.append(el("div", "V ="), el("pre", doc.V_text));
  target.append(el("div", "M = V⁻¹ A V ="), el("pre", doc.M_text));
  const list = el("ul");
  for (const c of doc.check.checks) {
    const item = el("li", `${c.passed ? "PASS" : "FAIL"} ${c.name}: ${c.detail}`, c.passed ? "pass" : "fail");
    list.append(item);
  }
  target.append(list);
}

function renderLadders(target, doc) {
  target.append(el("p", doc.diagonalizable ? "diagonalizable" : "not diagonalizable"));
  for (const e of doc.eigenvalues) {
    target.append(el("h3", `λ = ${e.lambda}`));
    target.append(el("p", `algebraic ${e.multiplicity}, geometric ${e.geometric}, height ${e.max_stage}`));
    const table = el("table");
    const head = el("tr");
    head.append(el("th", "k"), el("th", "dim ker (A - λI)^k"), el("th", ""));
    table.append(head);
    e.stage_dims.forEach((d, k) => {
      const row = el("tr");
      const bar = el("td", undefined, "ladder");
      for (let i = 0; i < d; i++) bar.append(el("span", " "));
      row.append(el("td", String(k + 1)), el("td", String(d)), bar);
      table.append(row);
    });
    target.append(table);
    e.chains.forEach((chain, i) => {
      const vectors = chain.map((v, k) => `v${k + 1} = (${v.join(", ")})`).join("\n");
      target.append(el("div", `chain ${i + 1}, length ${chain.length}`), el("pre", vectors));
    });
  }
}

await init();

$("gen").addEventListener("click", () =>
  show($("gen-out"), (target) => {
    const doc = JSON.parse(generate($("structure").value, Number($("seed").value), Number($("bound").value)));
    $("matrix").value = doc.matrix_text;
    target.append(el("div", `expected Jordan form of ${doc.structure}:`), el("pre", doc.jordan_text));
  }),
);

$("decompose").addEventListener("click", () =>
  show($("out"), (target) =>
    renderDecomposition(target, JSON.parse(decompose($("matrix").value, $("kind").value, $("spectrum").value))),
  ),
);

$("ladder").addEventListener("click", () =>
  show($("out"), (target) => renderLadders(target, JSON.parse(ladder($("matrix").value, $("spectrum").value)))),
);
