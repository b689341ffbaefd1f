/** Side panels: per-state factor inspection, the two-action contrast
 * comparison, and the explanation text pane. Everything shown comes
 * straight out of service documents; this module only arranges it.
 */
import { arrowFor, escapeHtml, formatQuantity } from "./format.js";
import type {
  ActionLabel,
  ContrastDoc,
  ExplanationDocWire,
  FactorsDoc,
} from "./types.js";

export interface ActionRow {
  label: ActionLabel;
  impact: string;
  responsibility: string;
  constrictiveness: string;
  isChosen: boolean;
  offerContrast: boolean;
}

export interface StatePanelModel {
  state: number;
  value: string;
  critical: boolean;
  chosen: ActionLabel | null;
  actions: ActionRow[];
}

export function buildStatePanel(factors: FactorsDoc): StatePanelModel {
  const actions = factors.enabled.map((label) => ({
    label,
    impact: formatQuantity(factors.impact[label]),
    responsibility: formatQuantity(factors.responsibility[label]),
    constrictiveness: formatQuantity(factors.constrictiveness?.[label]),
    isChosen: factors.chosen === label,
    offerContrast: factors.critical && factors.chosen !== label,
  }));
  return {
    state: factors.state,
    value: formatQuantity(factors.value),
    critical: factors.critical,
    chosen: factors.chosen,
    actions,
  };
}

export function renderStatePanelHtml(model: StatePanelModel): string {
  const heading =
    `<h2>grid ${model.state}` +
    (model.critical ? ' <span class="badge">critical</span>' : "") +
    `</h2><p class="value-line">expected distance ${escapeHtml(model.value)}</p>`;
  if (model.actions.length === 0) {
    return `${heading}<p class="hint">No moves are possible here.</p>`;
  }
  const rows = model.actions
    .map((row) => {
      const alt = row.offerContrast
        ? `<button class="alt-btn" data-alt="${row.label}">compare</button>`
        : row.isChosen
          ? '<span class="chosen-mark">chosen</span>'
          : "";
      return (
        `<tr class="${row.isChosen ? "is-chosen" : ""}">` +
        `<td>${arrowFor(row.label)} ${row.label}</td>` +
        `<td>${escapeHtml(row.impact)}</td>` +
        `<td>${escapeHtml(row.responsibility)}</td>` +
        `<td>${escapeHtml(row.constrictiveness)}</td>` +
        `<td>${alt}</td></tr>`
      );
    })
    .join("");
  const note = model.critical
    ? ""
    : '<p class="hint">Not critical at the current threshold; contrast needs a critical state.</p>';
  return (
    `${heading}<table class="factor-table"><thead><tr>` +
    "<th>action</th><th>impact</th><th>responsibility</th>" +
    "<th>decision points</th><th></th></tr></thead>" +
    `<tbody>${rows}</tbody></table>${note}`
  );
}

export interface ContrastRow {
  label: string;
  chosen: string;
  alternative: string;
}

export interface ContrastPanelModel {
  state: number;
  chosen: string;
  alternative: string;
  sentence: string;
  rows: ContrastRow[];
  footprints: { chosen: number[]; alternative: number[] };
}

export function buildContrastModel(
  factors: FactorsDoc,
  contrast: ContrastDoc,
): ContrastPanelModel {
  const chosen = contrast.chosen as ActionLabel;
  const alternative = contrast.alt as ActionLabel;
  const pick = (
    table: Partial<Record<ActionLabel, number | "unreachable">> | undefined,
  ): [string, string] => [
    formatQuantity(table?.[chosen]),
    formatQuantity(table?.[alternative]),
  ];
  const [impactC, impactA] = pick(factors.impact);
  const [respC, respA] = pick(factors.responsibility);
  const [consC, consA] = pick(factors.constrictiveness);
  return {
    state: contrast.state,
    chosen,
    alternative,
    sentence: contrast.sentence,
    rows: [
      { label: "impact", chosen: impactC, alternative: impactA },
      { label: "responsibility", chosen: respC, alternative: respA },
      { label: "future decision points", chosen: consC, alternative: consA },
    ],
    footprints: {
      chosen: factors.tree_states?.[chosen] ?? [],
      alternative: factors.tree_states?.[alternative] ?? [],
    },
  };
}

export function renderContrastHtml(model: ContrastPanelModel): string {
  const rows = model.rows
    .map(
      (row) =>
        `<tr><th>${escapeHtml(row.label)}</th>` +
        `<td>${escapeHtml(row.chosen)}</td>` +
        `<td>${escapeHtml(row.alternative)}</td></tr>`,
    )
    .join("");
  return (
    `<h2>grid ${model.state}: ${model.chosen} vs ${model.alternative}</h2>` +
    `<p class="sentence">${escapeHtml(model.sentence)}</p>` +
    '<table class="contrast-table"><thead><tr><th></th>' +
    `<th>${model.chosen} <span class="fp-key fp-chosen"></span></th>` +
    `<th>${model.alternative} <span class="fp-key fp-alternative"></span></th>` +
    `</tr></thead><tbody>${rows}</tbody></table>` +
    '<p class="hint">Shaded cells on the grid show each action\'s reachable search tree.</p>'
  );
}

const EMPTY_STATE_HINT =
  "No explanation requested. Pick another style to see why the route " +
  "goes the way it does.";

export function renderExplanationHtml(doc: ExplanationDocWire): string {
  if (doc.type === "none" || doc.text === "") {
    return `<p class="hint">${escapeHtml(EMPTY_STATE_HINT)}</p>`;
  }
  return `<p class="explanation-text">${escapeHtml(doc.text)}</p>`;
}

export function renderInlineError(message: string): string {
  return `<p class="inline-error">${escapeHtml(message)}</p>`;
}
