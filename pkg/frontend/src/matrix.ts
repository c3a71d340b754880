/** ATT&CK matrix heatmap: 14 tactic columns, profile techniques highlighted. */

import type { Profile } from './types.js';
import { TACTIC_COLUMNS } from './types.js';

export const HIGHLIGHT_COLOR = '#ff6666';

export function renderMatrix(
  container: HTMLElement,
  profile: Profile | null,
  highlights: Set<string>,
): void {
  container.replaceChildren();
  if (!profile) {
    const hint = document.createElement('p');
    hint.className = 'muted';
    hint.textContent = 'select a group to light up its techniques';
    container.append(hint);
    return;
  }
  const byTactic = new Map(profile.ttp.map((row) => [row.tactic, row.techniques]));
  const board = document.createElement('div');
  board.className = 'matrix';
  for (const column of TACTIC_COLUMNS) {
    const lane = document.createElement('div');
    lane.className = 'matrix-column';
    const header = document.createElement('h3');
    header.textContent = column.name;
    lane.append(header);
    for (const technique of byTactic.get(column.id) ?? []) {
      const cell = document.createElement('div');
      cell.className = 'matrix-cell';
      cell.dataset.key = `${column.id}/${technique.id}`;
      if (highlights.has(`${column.id}/${technique.id}`)) {
        cell.classList.add('highlight');
        cell.style.background = HIGHLIGHT_COLOR;
      }
      cell.textContent = `${technique.id} ${technique.name}`;
      lane.append(cell);
    }
    board.append(lane);
  }
  container.append(board);
}
