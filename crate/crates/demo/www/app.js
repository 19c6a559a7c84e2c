import init, { charpoly, sequence, census_tsri } from "./pkg/tsr_demo.js";

const $ = (id) => document.getElementById(id);

function show(out, compute) {
  out.classList.remove("error");
  try {
    out.textContent = compute();
  } catch (err) {
    out.classList.add("error");
    out.textContent = String(err.message ?? err);
  }
}

function register() {
  return [$("q").value, $("c").value, $("b").value];
}

await init();

$("charpoly-run").addEventListener("click", () =>
  show($("charpoly-out"), () => {
    const r = JSON.parse(charpoly(...register()));
    return [
      `m = ${r.m}, n = ${r.n}`,
      `block companion: ${r.companion.split(";").join("\n                 ")}`,
      `direct:      ${r.direct}`,
      `structural:  ${r.structural}`,
      `agree:       ${r.agree}`,
      `irreducible: ${r.irreducible}`,
      `primitive:   ${r.primitive}`,
    ].join("\n");
  }),
);

$("sequence-run").addEventListener("click", () =>
  show($("sequence-out"), () => {
    const steps = Math.max(0, Math.min(200, Number($("steps").value) || 0));
    const r = JSON.parse(sequence(...register(), $("state").value, steps));
    return r.states.map((s, i) => `${i}: ${s}`).join("\n") + `\nperiod: ${r.period}`;
  }),
);

$("census-run").addEventListener("click", () =>
  show($("census-out"), () => {
    const r = JSON.parse(census_tsri($("q").value, Number($("census-m").value), Number($("census-n").value)));
    const formula = r.formula ? `${r.formula.num}/${r.formula.den}` : "none";
    return [
      `irreducible registers: ${r.brute}`,
      `distinct char. polys:  ${r.image}`,
      `formula:               ${formula} (${r.match ? "match" : "no match"})`,
      `registers enumerated:  ${r.enumerated}`,
    ].join("\n");
  }),
);
