/** Pure view-model and HTML for the interactive grid. Inputs are service
 * documents plus the local view state; output is reproducible from those
 * alone.
 */
import { arrowFor, escapeHtml } from "./format.js";
import type { CellLetter, MapDoc, PolicyDoc, ViewState } from "./types.js";

export type CellKind =
  | "open"
  | "building"
  | "start"
  | "destination"
  | "deadend"
  | "highway";

const KIND_BY_LETTER: Record<CellLetter, CellKind> = {
  U: "open",
  B: "building",
  S: "start",
  D: "destination",
  X: "deadend",
  H: "highway",
};

const LETTER_SHOWN: Partial<Record<CellKind, string>> = {
  start: "S",
  destination: "D",
  deadend: "X",
};

export interface FootprintSets {
  chosen: ReadonlySet<number>;
  alternative: ReadonlySet<number>;
}

export interface CellView {
  id: number;
  kind: CellKind;
  label: string;
  arrow: string;
  onRoute: boolean;
  critical: boolean;
  selected: boolean;
  selectable: boolean;
  footprint: "chosen" | "alternative" | "both" | null;
}

export interface GridViewModel {
  width: number;
  height: number;
  rows: CellView[][];
}

export function buildGridViewModel(
  map: MapDoc,
  policy: PolicyDoc,
  critical: ReadonlySet<number>,
  view: ViewState,
  footprints?: FootprintSets,
): GridViewModel {
  const routeStates = new Set<number>();
  if (policy.route !== null) {
    for (const step of policy.route.steps) routeStates.add(step.state);
    routeStates.add(policy.route.terminal);
  }

  const rows: CellView[][] = [];
  for (let row = 0; row < map.height; row += 1) {
    const cells: CellView[] = [];
    for (let col = 0; col < map.width; col += 1) {
      const id = row * map.width + col;
      const letter = map.cells[id] ?? "B";
      const kind = KIND_BY_LETTER[letter];
      const inChosen = footprints?.chosen.has(id) ?? false;
      const inAlt = footprints?.alternative.has(id) ?? false;
      cells.push({
        id,
        kind,
        label: LETTER_SHOWN[kind] ?? "",
        arrow: arrowFor(policy.choices[String(id)] ?? null),
        onRoute: routeStates.has(id),
        critical: critical.has(id),
        selected: view.selectedState === id,
        selectable: kind !== "building",
        footprint:
          inChosen && inAlt
            ? "both"
            : inChosen
              ? "chosen"
              : inAlt
                ? "alternative"
                : null,
      });
    }
    rows.push(cells);
  }
  return { width: map.width, height: map.height, rows };
}

function cellClasses(cell: CellView): string {
  const classes = ["cell", `kind-${cell.kind}`];
  if (cell.onRoute) classes.push("on-route");
  if (cell.critical) classes.push("critical");
  if (cell.selected) classes.push("selected");
  if (cell.footprint !== null) classes.push(`fp-${cell.footprint}`);
  return classes.join(" ");
}

export function renderGridHtml(model: GridViewModel): string {
  const parts: string[] = [
    `<div class="grid" role="grid" style="--grid-cols: ${model.width}">`,
  ];
  for (const row of model.rows) {
    for (const cell of row) {
      const badge = cell.critical ? '<span class="badge">!</span>' : "";
      const arrow = cell.arrow
        ? `<span class="arrow">${cell.arrow}</span>`
        : "";
      const label = cell.label
        ? `<span class="letter">${escapeHtml(cell.label)}</span>`
        : "";
      const pressed = cell.selected ? ' aria-pressed="true"' : "";
      const disabled = cell.selectable ? "" : " disabled";
      parts.push(
        `<button class="${cellClasses(cell)}" data-state="${cell.id}"` +
          `${pressed}${disabled} title="grid ${cell.id}">` +
          `${label}${arrow}${badge}</button>`,
      );
    }
  }
  parts.push("</div>");
  return parts.join("");
}
