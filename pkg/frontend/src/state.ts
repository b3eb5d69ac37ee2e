/** Explorer view state and navigation between the three views. */

export type ViewName = "opv" | "inbound" | "outbound";

const VIEWS: ReadonlySet<string> = new Set(["opv", "inbound", "outbound"]);

export interface ViewState {
  activeView: ViewName;
  hcSection: string | null; // node id shown in the highlighted-contents panel
  zihSection: string | null; // provision locator shown in the zoomed-in panel
  hoveredNode: string | null;
}

export function initialState(): ViewState {
  return { activeView: "opv", hcSection: null, zihSection: null, hoveredNode: null };
}

/**
 * Switch views. Unknown targets are ignored; the current ZIH provision is
 * always preserved across switches.
 */
export function navigateViews(state: ViewState, target: string): ViewState {
  if (!VIEWS.has(target)) return state;
  return { ...state, activeView: target as ViewName, hoveredNode: null };
}
