/** Display formatting for service-provided quantities. Formatting only;
 * every number shown was computed by the service.
 */
import type { Quantity } from "./types.js";

export function formatQuantity(value: Quantity | undefined): string {
  if (value === undefined) return "-";
  if (value === "unreachable") return "unreachable";
  const rounded = Math.round(value * 1000) / 1000;
  if (Number.isInteger(rounded)) return String(rounded);
  return rounded.toFixed(3).replace(/0+$/, "");
}

export function formatAlpha(alpha: number): string {
  return Number.isInteger(alpha) ? alpha.toFixed(1) : String(alpha);
}

const ARROWS: Record<string, string> = {
  north: "↑",
  east: "→",
  south: "↓",
  west: "←",
};

export function arrowFor(action: string | null): string {
  if (action === null) return "";
  return ARROWS[action] ?? "?";
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
